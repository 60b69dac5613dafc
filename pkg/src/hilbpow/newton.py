"""Newton polyhedra and integral closures of monomial ideals.

The integral closure of a monomial ideal I is spanned by the monomials whose
exponent vectors lie in ``NP(I) = conv(exponents of I) + R^n_{>=0}``.

Two independent membership tests are provided.  :func:`in_integral_closure`
solves the defining linear feasibility problem exactly.  :class:`NewtonPolyhedron`
carries an inequality description obtained from the vertices of the blocker
``{a >= 0 : a.v >= 1 for every generator v}``; for an up-closed polyhedron
missing the origin, those vertices give every facet not of the form
``x_i >= 0``.  Generator enumeration uses the inequalities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd, lcm
from typing import Sequence

from .lp import is_feasible
from .monomial import Monomial, MonomialIdeal, intersect, saturate


def _check_proper(ideal: MonomialIdeal) -> None:
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("integral closure needs a proper nonzero ideal")


def in_integral_closure(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    """Decide m in closure(I) by exact LP feasibility.

    Unknowns: convex weights on the generators and slacks s >= 0 with
    sum_j w_j v_j + s = m.
    """
    _check_proper(ideal)
    m = tuple(m)
    n = ideal.n
    if len(m) != n:
        raise ValueError(f"monomial {m} is not in a ring of dimension {n}")
    gens = ideal.gens
    A = [[1] * len(gens) + [0] * n]
    for i in range(n):
        A.append([g[i] for g in gens] + [int(j == i) for j in range(n)])
    return is_feasible(A, [1, *m])


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None if singular."""
    n = len(rows)
    aug = [row[:] + [r] for row, r in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _integer_inequality(a: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    """Scale a.x >= 1 to coprime integers a'.x >= b'."""
    den = lcm(*(v.denominator for v in a), 1)
    coeffs = [int(v * den) for v in a]
    g = gcd(*coeffs, den)
    return tuple(c // g for c in coeffs), den // g


class NewtonPolyhedron:
    """Inequality description ``a.x >= b`` (plus ``x >= 0``) of NP(I)."""

    def __init__(self, ideal: MonomialIdeal):
        _check_proper(ideal)
        self.n = ideal.n
        self.vertices: tuple[Monomial, ...] = ideal.gens
        self.facets: tuple[tuple[tuple[int, ...], int], ...] = self._compute_facets()

    def _compute_facets(self):
        n = self.n
        # constraint rows: a.v >= 1 for generators, a_i >= 0 for coordinates
        constraints = [([Fraction(c) for c in v], Fraction(1)) for v in self.vertices]
        constraints += [([Fraction(int(j == i)) for j in range(n)], Fraction(0)) for i in range(n)]
        found = set()
        for chosen in combinations(constraints, n):
            sol = _solve([list(c[0]) for c in chosen], [c[1] for c in chosen])
            if sol is None or any(v < 0 for v in sol):
                continue
            if all(sum(a * x for a, x in zip(sol, v)) >= 1 for v in self.vertices):
                found.add(tuple(sol))
        return tuple(sorted(_integer_inequality(a) for a in found))

    def contains(self, point: Sequence[int], scale: int = 1) -> bool:
        """Membership of point in scale * NP(I) by the facet inequalities."""
        if any(x < 0 for x in point):
            return False
        return all(sum(a * x for a, x in zip(coeffs, point)) >= scale * b for coeffs, b in self.facets)

    def box(self, scale: int = 1) -> tuple[int, ...]:
        """Componentwise bound on minimal lattice points of scale * NP(I)."""
        top = [0] * self.n
        for v in self.vertices:
            for i, e in enumerate(v):
                top[i] = max(top[i], e)
        return tuple(scale * e for e in top)

    def minimal_lattice_points(self, scale: int = 1) -> MonomialIdeal:
        """Minimal generators of the monomials in scale * NP(I).

        Any point of the polyhedron, truncated to the box, stays inside it, so
        all minimal points lie in the box.  For each choice of the first n-1
        coordinates only the least admissible last coordinate can be minimal.
        """
        n = self.n
        box = self.box(scale)
        candidates = []
        for prefix in product(*(range(b + 1) for b in box[:-1])):
            need = 0
            ok = True
            for coeffs, b in self.facets:
                rest = scale * b - sum(a * x for a, x in zip(coeffs, prefix))
                if rest <= 0:
                    continue
                last = coeffs[-1]
                if last == 0:
                    ok = False
                    break
                need = max(need, -(-rest // last))
            if ok and need <= box[-1]:
                candidates.append(prefix + (need,))
        return MonomialIdeal(n, candidates)


@lru_cache(maxsize=4096)
def newton_polyhedron(ideal: MonomialIdeal) -> NewtonPolyhedron:
    return NewtonPolyhedron(ideal)


def integral_closure(ideal: MonomialIdeal) -> MonomialIdeal:
    return newton_polyhedron(ideal).minimal_lattice_points()


def integral_closure_of_power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    """closure(I^k), read off the k-fold dilation of NP(I)."""
    if k == 0:
        return MonomialIdeal.unit(ideal.n)
    return newton_polyhedron(ideal).minimal_lattice_points(scale=k)


def relative_integral_closure(ideal: MonomialIdeal) -> MonomialIdeal:
    """closure(I) intersected with the saturation I : m^inf."""
    _check_proper(ideal)
    return intersect(integral_closure(ideal), saturate(ideal, MonomialIdeal.maximal(ideal.n)))
