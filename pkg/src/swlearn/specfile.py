"""JSON spec files and random instance generation."""

from __future__ import annotations

import json
import random
import re
from importlib import resources
from pathlib import Path

from .core import (
    PolynomialVectorField,
    RestrictionAutomaton,
    SwitchedSystemSpec,
    ValidationError,
)


class SpecError(ValueError):
    """A spec file that cannot be parsed or fails validation."""


def _require(doc: dict, key: str, where: str = ""):
    if not isinstance(doc, dict) or key not in doc:
        raise SpecError(f"missing field '{where}{key}'")
    return doc[key]


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"field {name!r} must be an integer, got {value!r}")
    return value


def spec_from_dict(doc: dict) -> SwitchedSystemSpec:
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    n = _int(_require(doc, "N"), "N")
    d = _int(_require(doc, "d"), "d")
    m = _int(_require(doc, "m"), "m")
    M = _int(_require(doc, "M"), "M")

    subsystems = _require(doc, "subsystems")
    if not isinstance(subsystems, list):
        raise SpecError("field 'subsystems' must be a list")
    fields = []
    for j, sub in enumerate(subsystems):
        where = f"subsystems[{j}]."
        p = _int(_require(sub, "p", where), where + "p")
        coeffs = _require(sub, "coeffs", where)
        if not (isinstance(coeffs, list) and all(isinstance(row, list) for row in coeffs)):
            raise SpecError(f"field '{where}coeffs' must be a list of rows")
        if any(isinstance(c, bool) or not isinstance(c, (int, float)) for row in coeffs for c in row):
            raise SpecError(f"field '{where}coeffs' must contain only numbers")
        if len({len(row) for row in coeffs}) > 1:
            raise SpecError(f"field '{where}coeffs' has ragged rows")
        try:
            fields.append(PolynomialVectorField(p, coeffs))
        except ValidationError as exc:
            raise SpecError(f"field '{where}coeffs': {exc}") from None

    aut = _require(doc, "automaton")
    nodes = _require(aut, "nodes", "automaton.")
    initial = _require(aut, "initial", "automaton.")
    raw_edges = _require(aut, "edges", "automaton.")
    if not isinstance(nodes, list) or not isinstance(raw_edges, list):
        raise SpecError("fields 'automaton.nodes' and 'automaton.edges' must be lists")
    edges = []
    for j, e in enumerate(raw_edges):
        where = f"automaton.edges[{j}]."
        edges.append(
            (
                _require(e, "src", where),
                _require(e, "dst", where),
                _int(_require(e, "label", where), where + "label"),
            )
        )
    spec = SwitchedSystemSpec(n, d, m, M, fields, RestrictionAutomaton(nodes, initial, edges))
    try:
        return spec.validate()
    except ValidationError as exc:
        raise SpecError(str(exc)) from None


def spec_to_dict(spec: SwitchedSystemSpec) -> dict:
    return {
        "N": spec.n_subsystems,
        "d": spec.dim,
        "m": spec.order,
        "M": spec.max_length,
        "subsystems": [{"p": f.p, "coeffs": f.coeffs.tolist()} for f in spec.fields],
        "automaton": {
            "nodes": list(spec.automaton.nodes),
            "initial": spec.automaton.initial,
            "edges": [{"src": s, "dst": t, "label": p} for s, t, p in spec.automaton.edges],
        },
    }


def load_spec(path) -> SwitchedSystemSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON ({exc})") from None
    return spec_from_dict(doc)


_NUMBER_LIST = re.compile(r"\[\s*(-?[\d.eE+-]+(?:\s*,\s*-?[\d.eE+-]+)*)\s*\]")


def to_json(doc) -> str:
    """Indented JSON with lists of numbers kept on one line."""
    text = json.dumps(doc, indent=2)
    return _NUMBER_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text) + "\n"


def dump_spec(spec: SwitchedSystemSpec) -> str:
    return to_json(spec_to_dict(spec))


def example_spec() -> SwitchedSystemSpec:
    """Three cubic subsystems on R^3; subsystem 1 first, 2 and 3 only after a 1."""
    text = resources.files("swlearn").joinpath("data/example1.json").read_text()
    return spec_from_dict(json.loads(text))


# -- random instances ------------------------------------------------------


def random_automaton(rng: random.Random, n_nodes: int, n_symbols: int, extra_edges: int | None = None) -> RestrictionAutomaton:
    """Strongly connected multigraph: a random Hamiltonian cycle plus extra edges.

    Extra edges may be self-loops, parallel edges, or repeat a label already
    leaving their source, so the result is often nondeterministic.
    """
    nodes = [f"v{i}" for i in range(n_nodes)]
    cycle = nodes[:]
    rng.shuffle(cycle)
    edges = []
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        edges.append((a, b, rng.randint(1, n_symbols)))
    if extra_edges is None:
        extra_edges = rng.randint(0, n_nodes * n_symbols // 2 + 1)
    for _ in range(extra_edges):
        edges.append((rng.choice(nodes), rng.choice(nodes), rng.randint(1, n_symbols)))
    return RestrictionAutomaton(tuple(nodes), nodes[0], tuple(edges)).validate(n_symbols)


def random_field(rng: random.Random, p: int, dim: int, order: int, bound: int = 1000, denom: int = 256) -> PolynomialVectorField:
    """Coefficients ``k / denom`` with integer ``k``, inside ``[-bound, bound]``."""
    top = bound * denom
    coeffs = [[rng.randint(-top, top) / denom for _ in range(order + 1)] for _ in range(dim)]
    return PolynomialVectorField(p, coeffs)


def random_spec(
    rng: random.Random,
    n_subsystems: int = 3,
    dim: int = 2,
    order: int = 3,
    max_length: int = 12,
    n_nodes: int = 3,
) -> SwitchedSystemSpec:
    fields = [random_field(rng, p, dim, order) for p in range(1, n_subsystems + 1)]
    automaton = random_automaton(rng, n_nodes, n_subsystems)
    return SwitchedSystemSpec(n_subsystems, dim, order, max_length, fields, automaton).validate()
