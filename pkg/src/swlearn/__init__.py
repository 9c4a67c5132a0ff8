"""Active learning of switched systems with polynomial subsystems and restriction automata."""
