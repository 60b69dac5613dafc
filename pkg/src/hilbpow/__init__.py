"""Exact Hilbert series, closures and asymptotics for monomial ideals."""

from .monomial import (
    DimensionMismatch,
    MonomialIdeal,
    colon,
    contains,
    ideal_sum,
    intersect,
    minimal_primes,
    minimalize,
    power,
    product,
    radical,
    saturate,
    squarefree_symbolic_power,
)
from .textio import IdealParseError, format_ideal, parse_ideal
from .hilbert import (
    EMPTY,
    HilbertData,
    HilbertSeries,
    QuotientModule,
    cumulative_hilbert_function,
    dimension,
    hilbert_data,
    length,
    series_of_module,
    series_of_quotient_ring,
)

__version__ = "0.1.0"

__all__ = [
    "IdealParseError",
    "format_ideal",
    "parse_ideal",
    "colon",
    "contains",
    "cumulative_hilbert_function",
    "dimension",
    "DimensionMismatch",
    "EMPTY",
    "hilbert_data",
    "HilbertData",
    "HilbertSeries",
    "ideal_sum",
    "intersect",
    "length",
    "minimal_primes",
    "minimalize",
    "MonomialIdeal",
    "power",
    "product",
    "QuotientModule",
    "radical",
    "saturate",
    "series_of_module",
    "series_of_quotient_ring",
    "squarefree_symbolic_power",
]
