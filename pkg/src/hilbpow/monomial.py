"""Monomials and monomial ideals in S = K[x1, ..., xn].

A monomial is a tuple of non-negative exponents.  A :class:`MonomialIdeal`
holds its minimal generators in descending lexicographic order, so two ideals are equal
exactly when their generator tuples are equal.  The coefficient field never
enters: every operation here is combinatorial on exponent vectors.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Monomial = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Raised when monomials or ideals from different rings are combined."""


def make_monomial(exps: Iterable[int], n: int | None = None) -> Monomial:
    m = tuple(int(e) for e in exps)
    if n is not None and len(m) != n:
        raise DimensionMismatch(f"monomial {m} does not have {n} exponents")
    if any(e < 0 for e in m):
        raise ValueError(f"negative exponent in {m}")
    return m


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """Generator of (a) : (b), i.e. lcm(a, b) / b."""
    return tuple(x - y if x > y else 0 for x, y in zip(a, b))


def degree(a: Monomial) -> int:
    return sum(a)


def support(a: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(a) if e)


_NUMPY_THRESHOLD = 256
_CHUNK = 512


def _minimal_numpy(mons: list[Monomial]) -> list[Monomial]:
    arr = np.array(mons, dtype=np.int64)
    keep = np.ones(len(mons), dtype=bool)
    for lo in range(0, len(mons), _CHUNK):
        block = arr[lo : lo + _CHUNK]
        # divides[i, j]: arr[j] divides block[i]; entries are distinct, so
        # only the diagonal is a self-match.
        divides_ = np.all(arr[None, :, :] <= block[:, None, :], axis=2)
        keep[lo : lo + _CHUNK] = divides_.sum(axis=1) == 1
    return [mons[i] for i in np.flatnonzero(keep)]


def _minimal(mons: Iterable[Monomial]) -> tuple[Monomial, ...]:
    distinct = list(set(mons))
    if len(distinct) > _NUMPY_THRESHOLD and len(distinct[0]) > 0:
        kept = _minimal_numpy(distinct)
        kept.sort(reverse=True)
        return tuple(kept)
    # Scanning by increasing degree means a monomial can only be divided by
    # something already kept.
    kept: list[Monomial] = []
    for m in sorted(distinct, key=lambda v: (sum(v), v)):
        for g in kept:
            if all(x <= y for x, y in zip(g, m)):
                break
        else:
            kept.append(m)
    kept.sort(reverse=True)
    return tuple(kept)


class MonomialIdeal:
    """An ideal of K[x1..xn] given by its minimal monomial generators.

    Instances are immutable and hashable.  The zero ideal has no generators;
    the unit ideal is generated by the constant monomial.
    """

    __slots__ = ("n", "gens", "_hash")

    def __init__(self, n: int, gens: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("ring dimension must be non-negative")
        mons = [make_monomial(g, n) for g in gens]
        self.n = n
        self.gens = _minimal(mons)
        self._hash = hash((n, self.gens))

    @classmethod
    def _trusted(cls, n: int, gens: tuple[Monomial, ...]) -> MonomialIdeal:
        # gens must already be minimal and sorted.
        obj = object.__new__(cls)
        obj.n = n
        obj.gens = gens
        obj._hash = hash((n, gens))
        return obj

    @classmethod
    def unit(cls, n: int) -> MonomialIdeal:
        return cls._trusted(n, ((0,) * n,))

    @classmethod
    def zero(cls, n: int) -> MonomialIdeal:
        return cls._trusted(n, ())

    @classmethod
    def maximal(cls, n: int) -> MonomialIdeal:
        """The graded maximal ideal (x1, ..., xn)."""
        return cls(n, [tuple(int(i == j) for j in range(n)) for i in range(n)])

    @classmethod
    def prime(cls, n: int, variables: Iterable[int]) -> MonomialIdeal:
        return cls(n, [tuple(int(i == j) for j in range(n)) for i in variables])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.gens == other.gens

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        from .textio import format_ideal

        return f"MonomialIdeal({self.n}, {format_ideal(self)!r})"

    def __len__(self) -> int:
        return len(self.gens)

    def __contains__(self, m: Sequence[int]) -> bool:
        return contains(self, m)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return product(self, other)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __pow__(self, k: int) -> MonomialIdeal:
        return power(self, k)

    def __le__(self, other: MonomialIdeal) -> bool:
        return is_subideal(self, other)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def max_exponents(self) -> Monomial:
        """Exponent vector of the lcm of all generators."""
        out = [0] * self.n
        for g in self.gens:
            for i, e in enumerate(g):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)


def _check_same_ring(*ideals: MonomialIdeal) -> int:
    n = ideals[0].n
    for other in ideals[1:]:
        if other.n != n:
            raise DimensionMismatch(f"ideals live in rings of dimension {n} and {other.n}")
    return n


def minimalize(gens: Iterable[Sequence[int]], n: int) -> MonomialIdeal:
    return MonomialIdeal(n, gens)


def contains(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    m = tuple(m)
    if len(m) != ideal.n:
        raise DimensionMismatch(f"monomial {m} is not in a ring of dimension {ideal.n}")
    return any(divides(g, m) for g in ideal.gens)


def is_subideal(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """True iff a is contained in b, checked generator by generator."""
    _check_same_ring(a, b)
    return all(contains(b, g) for g in a.gens)


def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    n = _check_same_ring(a, b)
    return MonomialIdeal._trusted(n, _minimal(mul(f, g) for f in a.gens for g in b.gens))


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    n = _check_same_ring(a, b)
    return MonomialIdeal._trusted(n, _minimal(a.gens + b.gens))


def power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 0:
        raise ValueError("power exponent must be non-negative")
    result = MonomialIdeal.unit(ideal.n)
    for _ in range(k):
        result = product(result, ideal)
    return result


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    n = _check_same_ring(a, b)
    return MonomialIdeal._trusted(n, _minimal(lcm(f, g) for f in a.gens for g in b.gens))


def intersect_all(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    if not ideals:
        raise ValueError("empty intersection")
    out = ideals[0]
    for other in ideals[1:]:
        out = intersect(out, other)
    return out


def colon_monomial(ideal: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    m = make_monomial(m, ideal.n)
    return MonomialIdeal._trusted(ideal.n, _minimal(quotient(f, m) for f in ideal.gens))


def colon(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """The ideal quotient a : b."""
    _check_same_ring(a, b)
    if b.is_zero:
        raise ValueError("colon by the zero ideal")
    return intersect_all([colon_monomial(a, g) for g in b.gens])


def saturation_step_bound(a: MonomialIdeal, b: MonomialIdeal) -> int:
    """Upper bound on the number of strict steps of a -> a : b.

    If u lies in a : b^inf then u * g^c lies in a for every generator g of b
    as soon as c >= max exponent of a's lcm over supp(g); by pigeonhole
    u * b^s lies in a once s > sum over g of (that c - 1).
    """
    top = a.max_exponents()
    return 1 + sum(max((top[i] for i in support(g)), default=0) for g in b.gens)


def colon_power_infinity(a: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    """a : m^inf for a monomial m: erase the exponents of supp(m)."""
    supp = support(make_monomial(m, a.n))
    return MonomialIdeal._trusted(
        a.n, _minimal(tuple(0 if i in supp else e for i, e in enumerate(g)) for g in a.gens)
    )


def saturate(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """The saturation a : b^inf.

    Uses a : b^inf = intersection over generators g of b of a : g^inf.
    """
    _check_same_ring(a, b)
    if b.is_zero:
        raise ValueError("saturation by the zero ideal")
    return intersect_all([colon_power_infinity(a, g) for g in b.gens])


def saturate_by_iteration(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """The saturation a : b^inf, by iterating a -> a : b to a fixpoint."""
    _check_same_ring(a, b)
    if b.is_zero:
        raise ValueError("saturation by the zero ideal")
    bound = saturation_step_bound(a, b)
    current = a
    for _ in range(bound + 1):
        nxt = colon(current, b)
        if nxt == current:
            return current
        current = nxt
    raise AssertionError(f"saturation did not stabilize within {bound} steps")


def radical(ideal: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal._trusted(
        ideal.n, _minimal(tuple(1 if e else 0 for e in g) for g in ideal.gens)
    )


def minimal_primes(ideal: MonomialIdeal) -> list[frozenset[int]]:
    """Minimal primes of a proper nonzero monomial ideal.

    Each prime (x_i : i in A) is returned as the variable index set A; these
    are the minimal vertex covers of the hypergraph whose edges are the
    supports of the radical's generators.  Output is sorted by (size, indices).
    """
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("minimal primes need a proper nonzero ideal")
    edges = [support(g) for g in radical(ideal).gens]
    # Berge's algorithm: extend the minimal transversals one edge at a time.
    covers: set[frozenset[int]] = {frozenset()}
    for edge in edges:
        grown = set()
        for c in covers:
            if c & edge:
                grown.add(c)
            else:
                grown.update(c | {v} for v in edge)
        covers = {c for c in grown if not any(o < c for o in grown)}
    return sorted(covers, key=lambda c: (len(c), sorted(c)))


def is_vertex_cover(cover: Iterable[int], ideal: MonomialIdeal) -> bool:
    cover = set(cover)
    return all(cover & support(g) for g in radical(ideal).gens)


def squarefree_symbolic_power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    """The k-th symbolic power of a squarefree ideal: the intersection of P^k
    over the minimal primes P."""
    if not ideal.is_squarefree:
        raise ValueError("symbolic powers via minimal primes need a squarefree ideal")
    if k == 0:
        return MonomialIdeal.unit(ideal.n)
    primes = [MonomialIdeal.prime(ideal.n, A) for A in minimal_primes(ideal)]
    return intersect_all([power(P, k) for P in primes])


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of total degree d in n variables."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for bars in combinations(range(d + n - 1), n - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + n - 2 - prev)
        yield tuple(exps)
