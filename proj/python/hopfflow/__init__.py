"""Free Lie algebra expansions, Rota-Baxter identities and Magnus-type solvers."""

from fractions import Fraction

from . import _core
from ._core import (
    dyson_solve,
    magnus_solve,
    omega_terms,
    reference_flow,
    solve_riccati,
    verify_topics,
)

__all__ = [
    "cbhd_commutators",
    "cbhd_term",
    "dyson_solve",
    "fdb_bracket",
    "fdb_primitives",
    "magnus_solve",
    "omega_terms",
    "pi1_identity",
    "reference_flow",
    "solve_riccati",
    "verify",
    "verify_topics",
]


def _poly(terms):
    return {tuple(word): Fraction(c) for word, c in terms}


def cbhd_term(m, letters=2):
    """Degree-m part of log(e^X e^Y) as {word: coefficient}; letters are 0-based."""
    return _poly(_core.cbhd_term(m, letters))


def cbhd_commutators(m, letters=2):
    """Degree-m part as [(coefficient, nested commutator string)]."""
    return [(Fraction(c), tree) for c, tree in _core.cbhd_commutators(m, letters)]


def pi1_identity(n):
    """pi_1 applied to the word 0 1 ... n-1."""
    return _poly(_core.pi1_identity(n))


def fdb_primitives(d):
    return _core.fdb_primitives(d)


def fdb_bracket(n, m):
    return Fraction(_core.fdb_bracket(n, m))


def verify(topic, order=4, theta="1", seed=0, trials=100, instance="all", variant="all"):
    """Runs one verification topic; returns a list of check dicts."""
    return _core.verify(topic, order, str(theta), seed, trials, instance, variant)
