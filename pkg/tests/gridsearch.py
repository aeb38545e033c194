"""Brute-force reference minimizer used to cross-check the simplex.

Independent of the solver module: it re-derives the affine solution set
of a constraint system by row reduction, then walks a rational grid over
the free coordinates and evaluates the L1 norm at every point.  Slow and
simple on purpose.
"""

from __future__ import annotations

from fractions import Fraction

from negprob import ConstraintSystem


def parameterization(
    cs: ConstraintSystem,
) -> tuple[list[Fraction], list[list[Fraction]], list[int]] | None:
    """Affine description of the solution set, or None when inconsistent.

    Returns (x0, basis, free_cols): x0 is the particular solution with all
    free coordinates zero, basis holds one null-space vector per free
    column, and setting x = x0 + sum(t_k * basis[k]) sweeps every solution
    as the t_k range over the rationals.  t_k is exactly the atom mass at
    free column free_cols[k].
    """
    n = cs.space.atom_count
    rows: list[list[Fraction]] = []
    for event, value in cs.rows:
        row = [Fraction(0)] * (n + 1)
        for atom in event.atoms:
            row[atom] = Fraction(1)
        row[n] = Fraction(value)
        rows.append(row)

    pivot_cols: list[int] = []
    rank = 0
    for col in range(n):
        pivot = next(
            (i for i in range(rank, len(rows)) if rows[i][col] != 0), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
        pivot_cols.append(col)
        rank += 1
        if rank == len(rows):
            break

    for i in range(rank, len(rows)):
        if rows[i][n] != 0:
            return None

    free_cols = [c for c in range(n) if c not in pivot_cols]
    x0 = [Fraction(0)] * n
    for i, col in enumerate(pivot_cols):
        x0[col] = rows[i][n]
    basis: list[list[Fraction]] = []
    for free in free_cols:
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for i, col in enumerate(pivot_cols):
            vec[col] = -rows[i][free]
        basis.append(vec)
    return x0, basis, free_cols


def _l1_at(
    x0: list[Fraction], basis: list[list[Fraction]], ts: tuple[Fraction, ...]
) -> Fraction:
    total = Fraction(0)
    for atom in range(len(x0)):
        value = x0[atom]
        for t, vec in zip(ts, basis):
            if vec[atom]:
                value += t * vec[atom]
        total += abs(value)
    return total


def _axis(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    points = []
    t = lo
    while t <= hi:
        points.append(t)
        t += step
    return points


def grid_minimum(
    cs: ConstraintSystem,
    lo: Fraction = Fraction(-2),
    hi: Fraction = Fraction(2),
    step: Fraction = Fraction(1, 64),
) -> tuple[Fraction, Fraction, list[Fraction]] | None:
    """(grid minimum, resolution bound, all sampled L1 values) or None.

    The bound is the largest amount by which the grid minimum can exceed
    the true minimum, assuming the true minimizer's free coordinates lie
    inside [lo, hi]: a full grid of pitch s leaves no point farther than
    s/2 per coordinate from a sample, and moving one coordinate by d
    changes the L1 norm by at most d times that basis vector's own L1
    norm.  Up to two free coordinates are swept exhaustively at the
    requested step; three use a coarse 1/4 sweep whose bound is kept (the
    two refinement stages around the incumbent only improve the minimum,
    never the guarantee).
    """
    param = parameterization(cs)
    if param is None:
        return None
    x0, basis, _ = param
    k = len(basis)
    weight = sum(
        (sum(abs(x) for x in vec) for vec in basis), Fraction(0)
    )
    if k == 0:
        value = _l1_at(x0, basis, ())
        return value, Fraction(0), [value]
    if k > 3:
        raise ValueError("grid search supports at most 3 free coordinates")

    values: list[Fraction] = []

    def sweep(axes: list[list[Fraction]]) -> tuple[Fraction, tuple[Fraction, ...]]:
        best: Fraction | None = None
        best_at: tuple[Fraction, ...] = ()
        def rec(prefix: tuple[Fraction, ...], depth: int) -> None:
            nonlocal best, best_at
            if depth == len(axes):
                value = _l1_at(x0, basis, prefix)
                values.append(value)
                if best is None or value < best:
                    best = value
                    best_at = prefix
                return
            for t in axes[depth]:
                rec(prefix + (t,), depth + 1)
        rec((), 0)
        assert best is not None
        return best, best_at

    if k <= 2:
        best, _ = sweep([_axis(lo, hi, step)] * k)
        return best, step / 2 * weight, values

    coarse = Fraction(1, 4)
    best, center = sweep([_axis(lo, hi, coarse)] * k)
    bound = coarse / 2 * weight
    for finer, radius in ((Fraction(1, 16), coarse), (step, Fraction(1, 16))):
        best_stage, center = sweep(
            [_axis(c - radius, c + radius, finer) for c in center]
        )
        best = min(best, best_stage)
    return best, bound, values
