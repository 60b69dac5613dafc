"""Hilbert series and Hilbert coefficients of monomial quotients.

The Hilbert series of S/I is written ``Q(t) / (1 - t)^n``; only the integer
numerator ``Q`` is stored.  Subquotients I/J (J inside I) get the numerator
``Q_J - Q_I`` by additivity.

Hilbert coefficients follow the cumulative convention

    H(N, i) = sum_{j <= i} dim N_j = sum_{i=0}^{d} (-1)^i e_i binom(x+d-i, d-i)

for large x.  Writing ``Q = (1-t)^(n-d) g`` with ``g(1) != 0``, the cumulative
series is ``g / (1-t)^(d+1)`` and expanding ``g`` around ``t = 1`` gives
``e_i = g^(i)(1) / i!``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .monomial import Monomial, MonomialIdeal, is_subideal

Poly = tuple[int, ...]


class _Empty:
    """Dimension of the zero module."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())


EMPTY = _Empty()


class InfiniteLength(ValueError):
    pass


# -- integer polynomials in t, ascending coefficients ------------------------


def _trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(a: Sequence[int], b: Sequence[int]) -> Poly:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int]) -> Poly:
    return poly_add(a, [-c for c in b])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(p: Sequence[int], k: int) -> Poly:
    return tuple([0] * k + list(p)) if p else ()


def _one_minus_t_power(k: int) -> Poly:
    return () if k == 0 else (1,) + (0,) * (k - 1) + (-1,)


def divide_by_one_minus_t(p: Sequence[int]) -> Poly:
    """Exact quotient p / (1 - t); p(1) must vanish."""
    if sum(p) != 0:
        raise ValueError("polynomial is not divisible by 1 - t")
    out = []
    acc = 0
    for c in p[:-1]:
        acc += c
        out.append(acc)
    return _trim(out)


def format_poly(p: Sequence[int], var: str = "t") -> str:
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"{sign} {body}")
    return " ".join(terms) or "0"


# -- the pivot recursion -----------------------------------------------------


def _components(gens: tuple[Monomial, ...]) -> list[list[Monomial]]:
    """Group generators whose supports are connected through shared variables."""
    groups: list[tuple[set[int], list[Monomial]]] = []
    for g in gens:
        supp = {i for i, e in enumerate(g) if e}
        merged_vars, merged_gens = set(supp), [g]
        rest = []
        for vars_, members in groups:
            if vars_ & supp:
                merged_vars |= vars_
                merged_gens.extend(members)
            else:
                rest.append((vars_, members))
        rest.append((merged_vars, merged_gens))
        groups = rest
    return [sorted(members, reverse=True) for _, members in groups]


def _two_variable_numerator(gens: Sequence[Monomial], i: int, j: int) -> Poly:
    # A staircase in two variables has a Hilbert-Burch resolution: the syzygies
    # are the lcms of neighbouring generators.
    stairs = sorted(gens, key=lambda g: (g[i], -g[j]))
    out: Poly = (1,)
    for g in stairs:
        out = poly_sub(out, _shift((1,), sum(g)))
    for a, b in zip(stairs, stairs[1:]):
        out = poly_add(out, _shift((1,), max(a[i], b[i]) + max(a[j], b[j])))
    return out


def _choose_pivot(gens: tuple[Monomial, ...]) -> Monomial:
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    var = max(range(n), key=lambda i: (counts[i], -i))
    exps = sorted(g[var] for g in gens if g[var])
    e = exps[(len(exps) - 1) // 2]
    pure = [g[var] for g in gens if g[var] and sum(g) == g[var]]
    if pure and e >= pure[0]:
        # x_var^e already lies in the ideal; drop below the pure power.
        e = max(g[var] for g in gens if g[var] and sum(g) != g[var])
    return tuple(e if k == var else 0 for k in range(n))


@lru_cache(maxsize=1 << 16)
def _numerator(gens: tuple[Monomial, ...]) -> Poly:
    if not gens:
        return (1,)
    if len(gens) == 1:
        return _one_minus_t_power(sum(gens[0]))
    if len(gens) == 2:
        a, b = gens
        return poly_add(
            poly_sub(poly_sub((1,), _shift((1,), sum(a))), _shift((1,), sum(b))),
            _shift((1,), sum(max(x, y) for x, y in zip(a, b))),
        )
    comps = _components(gens)
    if len(comps) > 1:
        out: Poly = (1,)
        for comp in comps:
            out = poly_mul(out, _numerator(tuple(comp)))
        return out
    active = [i for i in range(len(gens[0])) if any(g[i] for g in gens)]
    if len(active) <= 2:
        return _two_variable_numerator(gens, active[0], active[-1])
    p = _choose_pivot(gens)
    n = len(p)
    left = MonomialIdeal(n, gens + (p,)).gens
    right = MonomialIdeal(n, [tuple(x - y if x > y else 0 for x, y in zip(g, p)) for g in gens]).gens
    return poly_add(_numerator(left), _shift(_numerator(right), sum(p)))


_cache_lock = threading.Lock()


def clear_cache() -> None:
    with _cache_lock:
        _numerator.cache_clear()


def quotient_numerator(ideal: MonomialIdeal) -> Poly:
    if ideal.is_unit:
        return ()
    return _numerator(ideal.gens)


# -- public types ------------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^n`` with integer numerator coefficients."""

    n: int
    numerator: Poly

    def __post_init__(self):
        object.__setattr__(self, "numerator", _trim(self.numerator))

    def __str__(self) -> str:
        return f"({format_poly(self.numerator)})/(1-t)^{self.n}"

    @property
    def is_zero(self) -> bool:
        return not self.numerator

    def coefficients(self, upto: int) -> list[int]:
        """Non-cumulative Hilbert function values dim N_0, ..., dim N_upto."""
        if self.n == 0:
            return [self.numerator[i] if i < len(self.numerator) else 0 for i in range(upto + 1)]
        return [
            sum(c * comb(i - j + self.n - 1, self.n - 1) for j, c in enumerate(self.numerator[: i + 1]))
            for i in range(upto + 1)
        ]


@dataclass(frozen=True)
class HilbertData:
    d: object  # int, or EMPTY for the zero module
    e: tuple[int, ...]

    def to_json(self) -> dict:
        return {"d": "EMPTY" if self.d is EMPTY else self.d, "e": list(self.e)}

    def polynomial_value(self, x: int) -> int:
        """Hilbert polynomial sum (-1)^i e_i binom(x+d-i, d-i) at x."""
        if self.d is EMPTY:
            return 0
        d = self.d
        return sum((-1) ** i * e * comb(x + d - i, d - i) for i, e in enumerate(self.e))


@dataclass(frozen=True)
class QuotientModule:
    """The subquotient outer/inner of S, with inner contained in outer."""

    outer: MonomialIdeal
    inner: MonomialIdeal

    def __post_init__(self):
        if self.outer.n != self.inner.n:
            raise ValueError("outer and inner ideals live in different rings")
        if not is_subideal(self.inner, self.outer):
            raise ValueError("inner ideal is not contained in outer ideal")

    @classmethod
    def ring(cls, ideal: MonomialIdeal) -> QuotientModule:
        """S/I."""
        return cls(MonomialIdeal.unit(ideal.n), ideal)

    @property
    def n(self) -> int:
        return self.outer.n

    @property
    def is_quotient_ring(self) -> bool:
        return self.outer.is_unit


def series_of_quotient_ring(ideal: MonomialIdeal) -> HilbertSeries:
    return HilbertSeries(ideal.n, quotient_numerator(ideal))


def series_of_module(q: QuotientModule) -> HilbertSeries:
    return HilbertSeries(q.n, poly_sub(quotient_numerator(q.inner), quotient_numerator(q.outer)))


def _root_at_one(p: Poly) -> tuple[int, Poly]:
    r = 0
    while p and sum(p) == 0:
        p = divide_by_one_minus_t(p)
        r += 1
    return r, p


def dimension(h: HilbertSeries):
    if h.is_zero:
        return EMPTY
    r, _ = _root_at_one(h.numerator)
    return h.n - r


def hilbert_data(h: HilbertSeries) -> HilbertData:
    if h.is_zero:
        raise ValueError("the zero module has no Hilbert coefficients")
    r, g = _root_at_one(h.numerator)
    d = h.n - r
    if d < 0:
        raise ValueError(f"numerator {h.numerator} is not the Hilbert numerator of a module")
    e = tuple(sum(c * comb(j, i) for j, c in enumerate(g)) for i in range(d + 1))
    return HilbertData(d, e)


def data_or_empty(h: HilbertSeries) -> HilbertData:
    return HilbertData(EMPTY, ()) if h.is_zero else hilbert_data(h)


def cumulative_hilbert_function(h: HilbertSeries, i: int) -> int:
    if i < 0:
        raise ValueError("degree must be non-negative")
    return sum(c * comb(i - j + h.n, h.n) for j, c in enumerate(h.numerator) if j <= i)


def length(h: HilbertSeries) -> int:
    if h.is_zero:
        return 0
    r, g = _root_at_one(h.numerator)
    if h.n - r != 0:
        raise InfiniteLength(f"module of dimension {h.n - r} has infinite length")
    return sum(g)
