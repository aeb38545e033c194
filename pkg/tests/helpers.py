"""Shared construction helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from negprob import (
    ConstraintSystem,
    Context,
    ContextFamily,
    ContradictoryRows,
    assemble,
    build_space,
    mach_zehnder_case,
)

MZ_ORDER = ("Da", "Db", "D1", "D2")


def mz_family(*cases: int) -> ContextFamily:
    """Merge several interferometer cases into one context family."""
    families = [mach_zehnder_case(n) for n in cases]
    used = tuple(
        v
        for v in MZ_ORDER
        if any(v in f.global_variables for f in families)
    )
    contexts = tuple(c for f in families for c in f.contexts)
    return ContextFamily(used, contexts)


_VALUE_POOL = [
    Fraction(0),
    Fraction(1),
    Fraction(1, 2),
    Fraction(1, 4),
    Fraction(3, 4),
    Fraction(1, 3),
    Fraction(-1, 4),
    Fraction(3, 2),
]

_NAMES = ("X", "Y", "Z")


def random_small_system(rng: random.Random) -> ConstraintSystem:
    """Random solvable-or-not system over at most three variables.

    The value pool includes negatives and values above 1 so all three
    solve statuses occur.  Draws that hit a contradictory duplicate event
    are rejected and retried.
    """
    while True:
        n_vars = rng.randint(1, 3)
        space = build_space(_NAMES[:n_vars])
        rows = []
        for _ in range(rng.randint(0, 4)):
            subset = [v for v in _NAMES[:n_vars] if rng.random() < 0.6]
            partial = {v: rng.choice((1, -1)) for v in subset}
            rows.append((partial, rng.choice(_VALUE_POOL)))
        try:
            return assemble(space, rows)
        except ContradictoryRows:
            continue


def random_pair_context(
    rng: random.Random, variables: tuple[str, str]
) -> Context:
    """Random proper distribution over one variable pair."""
    while True:
        weights = [rng.randint(0, 8) for _ in range(4)]
        total = sum(weights)
        if total:
            break
    return Context(
        variables, tuple(Fraction(w, total) for w in weights)
    )
