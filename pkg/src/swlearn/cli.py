"""Command-line front end.

Exit codes: 0 success, 2 unreadable or invalid spec, 3 oracle or solver
failure, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from .automaton import to_dot
from .core import DEFAULT_BUDGET, EnumerationBudgetError
from .lstar import MAX_ITER, LearningError, learn_automaton
from .oracle import GrayBoxOracle, OracleError
from .polylearn import SolverError, learn_all_subsystems
from .specfile import SpecError, dump_spec, example_spec, load_spec, random_spec, to_json
from .table import render_snapshot

log = logging.getLogger("swlearn")

EXIT_OK, EXIT_SPEC, EXIT_ORACLE, EXIT_BUDGET = 0, 2, 3, 4


def _models_report(spec, oracle) -> str:
    fields = learn_all_subsystems(oracle, spec.n_subsystems, spec.dim, spec.order)
    doc = {
        "N": spec.n_subsystems,
        "d": spec.dim,
        "m": spec.order,
        "subsystems": [{"p": f.p, "coeffs": f.coeffs.tolist()} for f in fields],
        "queries": {"eval": oracle.stats.eval_queries},
    }
    return to_json(doc)


def _learn(spec, oracle, args):
    return learn_automaton(
        oracle,
        spec.n_subsystems,
        spec.max_length,
        mode=args.mode,
        truth=spec.automaton if args.mode == "whitebox" else None,
        budget=args.budget,
        max_iter=args.max_iter,
    )


def _trace_text(trace, oracle) -> str:
    return trace.dump() + f"queries\tmembership={oracle.stats.membership_queries}\n"


def cmd_learn_models(args) -> int:
    spec = load_spec(args.spec)
    oracle = GrayBoxOracle(spec)
    text = _models_report(spec, oracle)
    _write(args.out, text)
    log.info("learned %d subsystems with %d evaluation queries", spec.n_subsystems, oracle.stats.eval_queries)
    return EXIT_OK


def cmd_learn_automaton(args) -> int:
    spec = load_spec(args.spec)
    oracle = GrayBoxOracle(spec)
    h, trace = _learn(spec, oracle, args)
    _write(args.dot, to_dot(h, "learned"))
    if args.trace:
        _write(args.trace, _trace_text(trace, oracle))
    if args.tables:
        _write(args.tables, "\n\n".join(render_snapshot(t) for t in trace.tables) + "\n")
    log.info(
        "learned %d-node automaton after %d counterexample(s), %d membership queries",
        len(h.nodes), len(trace.counterexamples), oracle.stats.membership_queries,
    )
    return EXIT_OK


def cmd_learn_all(args) -> int:
    spec = load_spec(args.spec)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    oracle = GrayBoxOracle(spec)
    models = _models_report(spec, oracle)
    h, trace = _learn(spec, oracle, args)
    (out / "models.json").write_text(models)
    (out / "automaton.dot").write_text(to_dot(h, "learned"))
    (out / "trace.log").write_text(_trace_text(trace, oracle))
    (out / "tables.txt").write_text("\n\n".join(render_snapshot(t) for t in trace.tables) + "\n")
    log.info("wrote models.json, automaton.dot, trace.log, tables.txt to %s", out)
    return EXIT_OK


def cmd_random_spec(args) -> int:
    rng = random.Random(args.seed)
    spec = random_spec(
        rng,
        n_subsystems=args.N,
        dim=args.d,
        order=args.m,
        max_length=args.M,
        n_nodes=args.nodes,
    )
    _write(args.out, dump_spec(spec))
    return EXIT_OK


def cmd_example_spec(args) -> int:
    _write(args.out, dump_spec(example_spec()))
    return EXIT_OK


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _add_learning_flags(p) -> None:
    p.add_argument("--mode", choices=["strict", "whitebox"], default="strict",
                   help="counterexample search: membership queries only, or direct comparison with the hidden automaton")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max words a strict search may enumerate")
    p.add_argument("--max-iter", type=int, default=MAX_ITER)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swlearn", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn-models", help="recover the subsystem polynomials")
    p.add_argument("spec")
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(func=cmd_learn_models)

    p = sub.add_parser("learn-automaton", help="learn the restriction automaton")
    p.add_argument("spec")
    p.add_argument("--dot", default="-")
    p.add_argument("--trace")
    p.add_argument("--tables", help="write every observation table as a text grid")
    _add_learning_flags(p)
    p.set_defaults(func=cmd_learn_automaton)

    p = sub.add_parser("learn-all", help="learn polynomials and automaton")
    p.add_argument("spec")
    p.add_argument("--out-dir", required=True)
    _add_learning_flags(p)
    p.set_defaults(func=cmd_learn_all)

    p = sub.add_parser("random-spec", help="write a random ground-truth spec")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-N", type=int, default=3)
    p.add_argument("-d", type=int, default=2)
    p.add_argument("-m", type=int, default=3)
    p.add_argument("-M", type=int, default=12)
    p.add_argument("--nodes", type=int, default=3)
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(func=cmd_random_spec)

    p = sub.add_parser("example-spec", help="write the bundled three-subsystem example")
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(func=cmd_example_spec)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"swlearn: invalid spec: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except EnumerationBudgetError as exc:
        print(f"swlearn: {exc}; rerun with --mode whitebox or a larger --budget", file=sys.stderr)
        return EXIT_BUDGET
    except (OracleError, SolverError, LearningError) as exc:
        print(f"swlearn: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except OSError as exc:
        print(f"swlearn: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
