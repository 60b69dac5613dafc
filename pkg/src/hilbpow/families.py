"""Families of subquotients indexed by k, and the reduction test."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .hilbert import (
    EMPTY,
    HilbertData,
    HilbertSeries,
    QuotientModule,
    data_or_empty,
    length,
    series_of_module,
)
from .monomial import (
    MonomialIdeal,
    is_subideal,
    power,
    product,
    saturate,
    squarefree_symbolic_power,
)
from .newton import integral_closure_of_power
from .textio import format_ideal, parse_ideal

log = logging.getLogger(__name__)

DEFAULT_K_MAX = 20
K_MAX_CAP = 60


class FamilyKind(str, Enum):
    SAT_VS_POWER = "SAT_VS_POWER"
    SYMBOLIC_J_VS_POWER = "SYMBOLIC_J_VS_POWER"
    CLOSURE_VS_POWER = "CLOSURE_VS_POWER"
    CLOSURE_PAIR = "CLOSURE_PAIR"
    CONSECUTIVE_POWERS = "CONSECUTIVE_POWERS"
    REES_PAIR = "REES_PAIR"
    QUOTIENT_RING_POWERS = "QUOTIENT_RING_POWERS"
    SQUAREFREE_SYMBOLIC_VS_POWER = "SQUAREFREE_SYMBOLIC_VS_POWER"

    @property
    def needs_second_ideal(self) -> bool:
        return self in (FamilyKind.SYMBOLIC_J_VS_POWER, FamilyKind.CLOSURE_PAIR, FamilyKind.REES_PAIR)


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    I: MonomialIdeal
    J: MonomialIdeal | None = None
    k_range: tuple[int, int] = (1, DEFAULT_K_MAX)

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        k_min, k_max = self.k_range
        if k_min < 0 or k_max < k_min:
            raise ValueError(f"bad k range {self.k_range}")
        if k_max > K_MAX_CAP:
            log.warning("k_max=%d exceeds the cap %d; generator counts of I^k explode", k_max, K_MAX_CAP)
            k_max = K_MAX_CAP
        object.__setattr__(self, "k_range", (k_min, k_max))
        if kind.needs_second_ideal != (self.J is not None):
            need = "requires" if kind.needs_second_ideal else "does not take"
            raise ValueError(f"{kind.value} {need} a second ideal J")
        if self.J is not None and self.J.n != self.I.n:
            raise ValueError("I and J live in rings of different dimension")
        if kind in (FamilyKind.REES_PAIR, FamilyKind.CLOSURE_PAIR) and not is_subideal(self.J, self.I):
            raise ValueError(f"{kind.value} needs J contained in I")
        if kind is FamilyKind.SQUAREFREE_SYMBOLIC_VS_POWER and not self.I.is_squarefree:
            raise ValueError("SQUAREFREE_SYMBOLIC_VS_POWER needs a squarefree ideal")
        if kind in (FamilyKind.CLOSURE_VS_POWER, FamilyKind.CLOSURE_PAIR):
            for ideal in (self.I, self.J):
                if ideal is not None and (ideal.is_zero or ideal.is_unit):
                    raise ValueError("closure families need proper nonzero ideals")

    @property
    def n(self) -> int:
        return self.I.n

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "I": format_ideal(self.I),
            "J": None if self.J is None else format_ideal(self.J),
            "k_range": list(self.k_range),
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> FamilySpec:
        J = data.get("J")
        return cls(
            FamilyKind(data["kind"]),
            parse_ideal(data["I"], n),
            None if J is None else parse_ideal(J, n),
            tuple(data.get("k_range", (1, DEFAULT_K_MAX))),
        )


@dataclass(frozen=True)
class FamilyRow:
    k: int
    module: QuotientModule
    series: HilbertSeries
    data: HilbertData
    length: int | None

    @property
    def dimension(self):
        return self.data.d

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "outer": format_ideal(self.module.outer),
            "inner": format_ideal(self.module.inner),
            "series": str(self.series),
            "dimension": "EMPTY" if self.data.d is EMPTY else self.data.d,
            "e": list(self.data.e),
            "length": self.length,
        }


def module_for(spec: FamilySpec, k: int, powers: dict[int, MonomialIdeal]) -> QuotientModule:
    """The k-th subquotient of the family; powers maps j -> I^j."""
    I, J, kind = spec.I, spec.J, spec.kind
    Ik = powers[k]
    if kind is FamilyKind.SAT_VS_POWER:
        return QuotientModule(saturate(Ik, MonomialIdeal.maximal(I.n)), Ik)
    if kind is FamilyKind.SYMBOLIC_J_VS_POWER:
        return QuotientModule(saturate(Ik, J), Ik)
    if kind is FamilyKind.CLOSURE_VS_POWER:
        return QuotientModule(integral_closure_of_power(I, k), Ik)
    if kind is FamilyKind.CLOSURE_PAIR:
        return QuotientModule(integral_closure_of_power(I, k), integral_closure_of_power(J, k))
    if kind is FamilyKind.CONSECUTIVE_POWERS:
        return QuotientModule(Ik, powers[k + 1])
    if kind is FamilyKind.REES_PAIR:
        return QuotientModule(Ik, power(J, k))
    if kind is FamilyKind.QUOTIENT_RING_POWERS:
        return QuotientModule.ring(Ik)
    if kind is FamilyKind.SQUAREFREE_SYMBOLIC_VS_POWER:
        return QuotientModule(squarefree_symbolic_power(I, k), Ik)
    raise ValueError(f"unknown family kind {kind}")


def make_row(k: int, module: QuotientModule) -> FamilyRow:
    series = series_of_module(module)
    data = data_or_empty(series)
    finite = data.d is EMPTY or data.d == 0
    return FamilyRow(k, module, series, data, length(series) if finite else None)


def _powers(I: MonomialIdeal, k_min: int, k_max: int) -> dict[int, MonomialIdeal]:
    out = {}
    current = power(I, k_min)
    for k in range(k_min, k_max + 2):
        out[k] = current
        current = product(current, I)
    return out


def iter_rows(spec: FamilySpec) -> Iterator[FamilyRow]:
    """Rows in increasing k, computed one at a time."""
    k_min, k_max = spec.k_range
    powers = _powers(spec.I, k_min, k_max)
    for k in range(k_min, k_max + 1):
        yield make_row(k, module_for(spec, k, powers))


def generate(spec: FamilySpec, workers: int = 1) -> list[FamilyRow]:
    """All rows of the family in k order.  Output does not depend on workers."""
    k_min, k_max = spec.k_range
    ks = range(k_min, k_max + 1)
    if workers <= 1:
        return list(iter_rows(spec))
    powers = _powers(spec.I, k_min, k_max)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda k: make_row(k, module_for(spec, k, powers)), ks))


def is_reduction(J: MonomialIdeal, I: MonomialIdeal, n_max: int) -> int | None:
    """Least n <= n_max with J I^n = I^(n+1), or None (inconclusive)."""
    if not is_subideal(J, I):
        raise ValueError("J is not contained in I")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    In = MonomialIdeal.unit(I.n)
    for n in range(n_max + 1):
        nxt = product(In, I)
        if product(J, In) == nxt:
            return n
        In = nxt
    return None
