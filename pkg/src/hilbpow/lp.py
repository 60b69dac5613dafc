"""Exact feasibility of ``A x = b, x >= 0`` over the rationals.

A phase-one simplex on a dense tableau of :class:`fractions.Fraction`, with
Bland's rule so it cannot cycle.  Problem sizes here are tiny (a few dozen
columns), so nothing clever is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def find_feasible_point(
    A: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction]
) -> list[Fraction] | None:
    """Return some x >= 0 with A x = b, or None if there is none."""
    m = len(A)
    ncols = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        # one artificial column per row
        art = [Fraction(int(j == i)) for j in range(m)]
        rows.append(row + art + [rhs])
    width = ncols + m
    basis = [ncols + i for i in range(m)]
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(ncols):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[entering]
            if a > 0:
                ratio = row[width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur in phase one; guard anyway
            break
        pivot_row = rows[leave]
        piv = pivot_row[entering]
        rows[leave] = pivot_row = [v / piv for v in pivot_row]
        for i, row in enumerate(rows):
            if i != leave and row[entering] != 0:
                f = row[entering]
                rows[i] = [v - f * p for v, p in zip(row, pivot_row)]
        f = cost[entering]
        cost = [v - f * p for v, p in zip(cost, pivot_row)]
        basis[leave] = entering

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        if j < ncols:
            x[j] = rows[i][width]
        elif rows[i][width] != 0:
            return None
    return x


def is_feasible(A, b) -> bool:
    return find_feasible_point(A, b) is not None
