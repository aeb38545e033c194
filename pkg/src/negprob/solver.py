"""Exact rational linear algebra and L1-minimizing linear programming.

A constraint system is a list of equality rows "mass of event E equals v"
over one sample space, plus the total-mass row.  Three questions are
answered, all over exact rationals with no tolerances anywhere:

* rank/nullity of the row matrix (dimension of the solution set);
* does a proper (nonnegative) solution exist, and if so produce one;
* what is the minimum of the L1 norm over all signed solutions, with a
  witness measure attaining it.

The optimizer is a dense two-phase primal simplex over ``Fraction``
entries.  Bland's rule (lowest eligible index enters, ties on the leaving
row broken by lowest basis index) guarantees termination and makes every
returned witness deterministic.  The L1 objective is handled by the
standard variable split x = xp - xn with xp, xn >= 0 and cost 1 on both
halves; at any optimal basis the two halves of one atom are never both
basic (their columns are negatives of each other), so the objective value
equals the L1 norm of the reconstructed solution exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ContradictoryRows,
    MissingNormalization,
    SpaceMismatch,
    ValueOutOfBounds,
)
from .measure import (
    Event,
    SampleSpace,
    SignedMeasure,
    as_fraction,
    cylinder,
    event_mass,
    l1_norm,
)

ASSEMBLE_VALUE_BOUND = Fraction(10) ** 9


class SolveStatus(Enum):
    PROPER_FEASIBLE = "ProperFeasible"
    SIGNED_FEASIBLE_ONLY = "SignedFeasibleOnly"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class ConstraintSystem:
    """Equality rows (event, value) over one space, plus normalization."""

    space: SampleSpace
    rows: tuple[tuple[Event, Fraction], ...]
    includes_normalization: bool

    def __post_init__(self) -> None:
        for event, _ in self.rows:
            if event.space != self.space:
                raise SpaceMismatch(
                    "constraint event lives in a different space"
                )


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an L1 minimization.

    status is INFEASIBLE when no signed measure satisfies the rows, in
    which case mstar and witness are None.  Otherwise mstar is the exact
    minimum L1 norm, the witness attains it, and the status says whether
    the witness is a proper distribution (mstar equal to 1) or signed
    masses are unavoidable (mstar above 1).
    """

    status: SolveStatus
    mstar: Fraction | None
    witness: SignedMeasure | None
    rank: int
    nullity: int


def assemble(
    space: SampleSpace,
    constraints: Iterable[tuple[Mapping[str, int], object]],
) -> ConstraintSystem:
    """Build a system from (partial assignment, value) pairs.

    Each pair becomes one cylinder-event row.  Exact duplicates are
    dropped; the same event with two different values raises
    ContradictoryRows.  The normalization row (full space equals 1) is
    appended unless the caller already supplied it.
    """
    rows: list[tuple[Event, Fraction]] = []
    values: dict[frozenset[int], Fraction] = {}
    for partial, raw in constraints:
        value = as_fraction(raw)
        if abs(value) > ASSEMBLE_VALUE_BOUND:
            raise ValueOutOfBounds(
                f"constraint value {value} outside sanity bound"
            )
        event = cylinder(space, partial)
        if event.atoms in values:
            if values[event.atoms] != value:
                raise ContradictoryRows(event, values[event.atoms], value)
            continue
        values[event.atoms] = value
        rows.append((event, value))
    full = Event.full(space)
    if full.atoms in values:
        if values[full.atoms] != 1:
            raise ContradictoryRows(full, values[full.atoms], Fraction(1))
    else:
        rows.append((full, Fraction(1)))
    return ConstraintSystem(space, tuple(rows), includes_normalization=True)


def _indicator(event: Event, n: int) -> list[Fraction]:
    row = [Fraction(0)] * n
    for atom in event.atoms:
        row[atom] = Fraction(1)
    return row


def rank_nullity(cs: ConstraintSystem) -> tuple[int, int]:
    """Rank of the 0/1 row matrix and nullity = atom_count - rank."""
    n = cs.space.atom_count
    rows = [_indicator(event, n) for event, _ in cs.rows]
    rank = 0
    for col in range(n):
        pivot = next(
            (i for i in range(rank, len(rows)) if rows[i][col] != 0), -1
        )
        if pivot < 0:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [
                    x - factor * y for x, y in zip(rows[i], rows[rank])
                ]
        rank += 1
        if rank == len(rows):
            break
    return rank, n - rank


# --- simplex internals ---------------------------------------------------


def _pivot(
    tab: list[list[Fraction]],
    rhs: list[Fraction],
    cost_row: list[Fraction],
    basis: list[int],
    row: int,
    col: int,
) -> None:
    inv = 1 / tab[row][col]
    tab[row] = [x * inv for x in tab[row]]
    rhs[row] *= inv
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            factor = tab[i][col]
            tab[i] = [x - factor * y for x, y in zip(tab[i], tab[row])]
            rhs[i] -= factor * rhs[row]
    factor = cost_row[col]
    if factor != 0:
        for j in range(len(tab[row])):
            cost_row[j] -= factor * tab[row][j]
        cost_row[-1] -= factor * rhs[row]
    basis[row] = col


def _bland_iterate(
    tab: list[list[Fraction]],
    rhs: list[Fraction],
    cost_row: list[Fraction],
    basis: list[int],
) -> None:
    """Primal simplex to optimality; Bland's rule, so it always halts."""
    ncols = len(cost_row) - 1
    while True:
        enter = -1
        for j in range(ncols):
            if cost_row[j] < 0:
                enter = j
                break
        if enter < 0:
            return
        leave = -1
        best: Fraction | None = None
        for i in range(len(tab)):
            coef = tab[i][enter]
            if coef > 0:
                ratio = rhs[i] / coef
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            # cannot happen for the L1 and feasibility programs solved
            # here (both objectives are bounded below), kept defensive
            raise ArithmeticError("linear program unbounded below")
        _pivot(tab, rhs, cost_row, basis, leave, enter)


def _lp_minimize(
    a_rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    cost: Sequence[Fraction],
) -> tuple[Fraction, list[Fraction]] | None:
    """min cost·x subject to Ax = b, x >= 0; None when infeasible."""
    m = len(a_rows)
    n = len(cost)
    tab = [list(row) for row in a_rows]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            tab[i] = [-x for x in tab[i]]
            rhs[i] = -rhs[i]

    # phase 1: artificial variable per row, drive their sum to zero
    zero = Fraction(0)
    one = Fraction(1)
    for i in range(m):
        tab[i] = tab[i] + [one if k == i else zero for k in range(m)]
    basis = [n + i for i in range(m)]
    cost_row = [zero] * (n + m + 1)
    for j in range(n, n + m):
        cost_row[j] = one
    for i in range(m):
        for j in range(n + m):
            cost_row[j] -= tab[i][j]
        cost_row[-1] -= rhs[i]
    _bland_iterate(tab, rhs, cost_row, basis)
    if -cost_row[-1] > 0:
        return None

    # pivot leftover artificials out of the basis; a row whose real
    # coefficients are all zero is redundant and gets dropped
    keep: list[int] = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), -1)
            if col < 0:
                continue
            _pivot(tab, rhs, cost_row, basis, i, col)
        keep.append(i)

    tab = [tab[i][:n] for i in keep]
    rhs = [rhs[i] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2: the real objective
    cost_row = [Fraction(c) for c in cost] + [zero]
    for i, row in enumerate(tab):
        basic_cost = cost[basis[i]]
        if basic_cost != 0:
            for j in range(n):
                cost_row[j] -= basic_cost * row[j]
            cost_row[-1] -= basic_cost * rhs[i]
    _bland_iterate(tab, rhs, cost_row, basis)

    x = [zero] * n
    for i in range(len(tab)):
        x[basis[i]] = rhs[i]
    return -cost_row[-1], x


def _system_matrix(
    cs: ConstraintSystem,
) -> tuple[list[list[Fraction]], list[Fraction]]:
    n = cs.space.atom_count
    a_rows = [_indicator(event, n) for event, _ in cs.rows]
    b = [value for _, value in cs.rows]
    return a_rows, b


def _require_normalization(cs: ConstraintSystem) -> None:
    if not cs.includes_normalization:
        raise MissingNormalization(
            "constraint system lacks the total-mass row; "
            "assemble() adds it automatically"
        )


def feasible_proper(cs: ConstraintSystem) -> SignedMeasure | None:
    """A nonnegative solution of all rows, or None when none exists.

    Absence of a proper solution is an ordinary answer, not an error; the
    rows may still admit signed solutions.
    """
    _require_normalization(cs)
    a_rows, b = _system_matrix(cs)
    solved = _lp_minimize(
        a_rows, b, [Fraction(0)] * cs.space.atom_count
    )
    if solved is None:
        return None
    _, x = solved
    return SignedMeasure(cs.space, tuple(x))


def minimize_l1(cs: ConstraintSystem) -> SolveResult:
    """Minimum L1 norm over all signed solutions, with witness.

    With the normalization row present the optimum is at least 1, and it
    equals 1 exactly when a proper solution exists; in that case the
    returned witness is itself proper.
    """
    _require_normalization(cs)
    rank, nullity = rank_nullity(cs)
    n = cs.space.atom_count
    a_rows, b = _system_matrix(cs)
    split = [row + [-x for x in row] for row in a_rows]
    solved = _lp_minimize(split, b, [Fraction(1)] * (2 * n))
    if solved is None:
        return SolveResult(SolveStatus.INFEASIBLE, None, None, rank, nullity)
    value, x = solved
    mass = tuple(x[j] - x[n + j] for j in range(n))
    witness = SignedMeasure(cs.space, mass)
    status = (
        SolveStatus.PROPER_FEASIBLE
        if value == 1
        else SolveStatus.SIGNED_FEASIBLE_ONLY
    )
    return SolveResult(status, value, witness, rank, nullity)


def verify_member(
    cs: ConstraintSystem, m: SignedMeasure, claimed_mstar: object
) -> bool:
    """True iff m satisfies every row exactly and has the claimed norm."""
    if m.space != cs.space:
        raise SpaceMismatch("measure lives in a different space")
    claimed = as_fraction(claimed_mstar)
    for event, value in cs.rows:
        if event_mass(m, event) != value:
            return False
    return l1_norm(m) == claimed
