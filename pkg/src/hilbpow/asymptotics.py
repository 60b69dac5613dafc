"""Exact polynomial and quasi-polynomial fitting of integer sequences.

Sequences are mappings ``k -> value`` with integer or rational values.  A fit
is only accepted when at least three samples beyond the interpolation points
confirm it; no floating point or tolerance is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Mapping, Sequence

from .hilbert import EMPTY

VERIFICATION_TAIL = 3


class InsufficientSamples(ValueError):
    pass


class TheoremViolation(ValueError):
    """A fitted sequence grows faster than the degree bound allows."""


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _trim(coeffs) -> tuple[Fraction, ...]:
    c = [_q(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _padd(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _binomial_poly(shift: int, r: int) -> tuple[Fraction, ...]:
    """binom(x + shift, r) as a polynomial in x."""
    out: tuple[Fraction, ...] = (Fraction(1),)
    for j in range(r):
        out = _pmul(out, (Fraction(shift - j), Fraction(1)))
    return tuple(c / factorial(r) for c in out)


@dataclass(frozen=True)
class RationalPolynomial:
    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def binomial_coefficients(self) -> tuple[Fraction, ...]:
        """c_0..c_D with P(x) = sum (-1)^i c_i binom(x+D-i, D-i)."""
        D = self.degree
        rest = self.coefficients
        out = []
        for i in range(D + 1):
            r = D - i
            basis = _binomial_poly(r, r)
            s = (rest[r] if r < len(rest) else Fraction(0)) * factorial(r)
            out.append(s if i % 2 == 0 else -s)
            rest = _padd(rest, tuple(-s * b for b in basis))
        return tuple(out)

    def text(self, var: str = "k") -> str:
        terms = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) or "0"

    def __str__(self) -> str:
        return self.text()

    def to_json(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coefficients],
            "binomial": [str(c) for c in self.binomial_coefficients()],
            "text": self.text(),
        }


def interpolate(points: Sequence[tuple[Any, Any]]) -> RationalPolynomial:
    """The unique polynomial of degree < len(points) through the points."""
    xs = [_q(x) for x, _ in points]
    table = [_q(y) for _, y in points]
    coef = [table[0]] if table else []
    for order in range(1, len(xs)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + order] - xs[i]) for i in range(len(table) - 1)
        ]
        coef.append(table[0])
    poly: tuple[Fraction, ...] = ()
    for j in range(len(coef) - 1, -1, -1):
        poly = _padd(_pmul(poly, (-xs[j], Fraction(1))), (coef[j],))
    return RationalPolynomial(poly)


def _tail_degrees(points: list[tuple[Fraction, Fraction]]) -> list[int]:
    """Degree of the interpolant through points[s:] for every s (-1 if all vanish).

    The Newton coefficients of points[s:] are column s of one divided
    difference table, so a single O(N^2) table serves every tail.  For
    consecutive abscissae plain forward differences vanish exactly when the
    divided ones do and avoid the growth of denominators.
    """
    xs = [x for x, _ in points]
    column = [y for _, y in points]
    unit_steps = all(b - a == 1 for a, b in zip(xs, xs[1:]))
    degrees = [0 if y != 0 else -1 for y in column]
    for order in range(1, len(xs)):
        if unit_steps:
            column = [column[i + 1] - column[i] for i in range(len(column) - 1)]
        else:
            column = [
                (column[i + 1] - column[i]) / (xs[i + order] - xs[i]) for i in range(len(column) - 1)
            ]
        for s, c in enumerate(column):
            if c != 0:
                degrees[s] = order
    return degrees


def _default_max_k0(keys: list[int]) -> int:
    # the confirmed tail must cover at least half of the samples
    return keys[(len(keys) - 1) // 2]


def fit_polynomial(seq: Mapping[int, Any], max_k0: int | None = None):
    """Fit seq by one polynomial from the least possible offset on.

    Returns ``(polynomial, k0)`` or None when no offset up to max_k0 admits a
    fit confirmed by three further samples.  max_k0 defaults to the median
    key, so a short lucky tail cannot pass for the eventual behaviour.
    Raises InsufficientSamples when the sequence is too short to confirm
    even a constant.
    """
    keys = sorted(seq)
    if len(keys) < 1 + VERIFICATION_TAIL:
        raise InsufficientSamples(f"need at least {1 + VERIFICATION_TAIL} samples, got {len(keys)}")
    if max_k0 is None:
        max_k0 = _default_max_k0(keys)
    pts = [(Fraction(k), _q(seq[k])) for k in keys]
    degrees = _tail_degrees(pts)
    for start, k0 in enumerate(keys):
        if k0 > max_k0:
            break
        deg = degrees[start]
        if max(deg, 0) + 1 + VERIFICATION_TAIL <= len(pts) - start:
            return interpolate(pts[start : start + deg + 1]), k0
    return None


@dataclass(frozen=True)
class QuasiPolynomial:
    """Values ``pieces[k mod g]((k - k mod g) / g)`` for k >= offset."""

    period: int
    offset: int
    pieces: tuple[RationalPolynomial, ...]

    def __post_init__(self):
        if self.period < 1 or len(self.pieces) != self.period:
            raise ValueError("need exactly one piece per residue class")

    def __call__(self, k: int) -> Fraction:
        r = k % self.period
        return self.pieces[r]((k - r) // self.period)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "offset": self.offset,
            "pieces": [p.to_json() for p in self.pieces],
        }


def fit_quasipolynomial(seq: Mapping[int, Any], g_max: int = 6, max_k0: int | None = None):
    """Least period g <= g_max whose residue classes all fit polynomials.

    Returns a QuasiPolynomial or None.
    """
    keys = sorted(seq)
    if len(keys) < 1 + VERIFICATION_TAIL:
        raise InsufficientSamples(f"need at least {1 + VERIFICATION_TAIL} samples, got {len(keys)}")
    if max_k0 is None:
        max_k0 = _default_max_k0(keys)
    for g in range(1, g_max + 1):
        pieces = []
        offset = keys[0]
        for r in range(g):
            cls = {(k - r) // g: seq[k] for k in keys if k % g == r}
            m_max = (max_k0 - r) // g
            try:
                fit = fit_polynomial(cls, m_max)
            except InsufficientSamples:
                fit = None
            if fit is None:
                break
            poly, m0 = fit
            pieces.append(poly)
            failing = [m for m in cls if m < m0]
            if failing:
                offset = max(offset, max(failing) * g + r + 1)
        else:
            return QuasiPolynomial(g, offset, tuple(pieces))
    return None


def stabilized_value(seq: Sequence[Any] | Mapping[int, Any]):
    """Eventual constant value of seq and the index where its last run begins.

    The final run must cover at least a third of the samples, otherwise
    None is returned.
    """
    if isinstance(seq, Mapping):
        keys = sorted(seq)
        values = [seq[k] for k in keys]
    else:
        values = list(seq)
        keys = list(range(len(values)))
    if not values:
        raise ValueError("empty sequence")
    start = len(values) - 1
    while start > 0 and values[start - 1] == values[-1]:
        start -= 1
    if 3 * (len(values) - start) < len(values):
        return None
    return values[-1], keys[start]


def _pieces_share_leading(qp: QuasiPolynomial) -> bool:
    first = qp.pieces[0]
    return all(p.degree == first.degree and p.leading == first.leading for p in qp.pieces)


def normalized_limit(qp: QuasiPolynomial, n: int, d) -> Fraction:
    """lim e_0(k) / k^(n-d) for a quasi-polynomial with equal leading terms."""
    if not _pieces_share_leading(qp):
        raise ValueError("pieces differ in degree or leading coefficient")
    top = qp.pieces[0]
    if top.is_zero or d is EMPTY:
        if not top.is_zero:
            raise ValueError("nonzero multiplicities for a module that is eventually zero")
        return Fraction(0)
    bound = n - d
    if top.degree > bound:
        raise TheoremViolation(f"degree {top.degree} exceeds n - d = {bound}")
    if top.degree < bound:
        return Fraction(0)
    return top.leading / Fraction(qp.period) ** top.degree


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one claim; holds is None when inconclusive."""

    claim: str
    holds: bool | None
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds is False and not self.witness:
            raise ValueError("a failed verdict needs a witness")

    @property
    def status(self) -> str:
        return {True: "pass", False: "fail", None: "inconclusive"}[self.holds]

    def to_json(self) -> dict:
        return {"claim": self.claim, "status": self.status, "witness": self.witness}


def equal_leading_verdict(qp: QuasiPolynomial, claim: str = "thm-2.7b-equal-leading") -> Verdict:
    witness = {
        "period": qp.period,
        "degrees": [p.degree for p in qp.pieces],
        "leading": [str(p.leading) for p in qp.pieces],
    }
    if _pieces_share_leading(qp):
        return Verdict(claim, True, witness)
    first = qp.pieces[0]
    bad = next(
        i for i, p in enumerate(qp.pieces) if p.degree != first.degree or p.leading != first.leading
    )
    witness["first_mismatch"] = bad
    return Verdict(claim, False, witness)


def _fit_or_none(seq):
    try:
        return fit_polynomial(seq)
    except InsufficientSamples:
        return None


def degree_bound_verdict(rows, n: int, claim: str = "thm-1.1-degree-bound") -> Verdict:
    """Check deg_k e_i(S/I^k) <= n - d + i for every i.

    rows carry ``k`` and ``data`` (HilbertData) attributes.
    """
    if not rows:
        return Verdict(claim, None, {"reason": "no rows"})
    dims = {row.k: row.data.d for row in rows}
    stable = stabilized_value(dims)
    if stable is None or stable[0] is EMPTY:
        return Verdict(claim, None, {"reason": "dimension did not stabilize to a nonzero module"})
    d, k_start = stable
    fits = []
    for i in range(d + 1):
        seq = {row.k: row.data.e[i] for row in rows if row.k >= k_start}
        fit = _fit_or_none(seq)
        if fit is None:
            return Verdict(claim, None, {"reason": f"e_{i} did not fit a polynomial", "d": d})
        poly, k0 = fit
        entry = {"i": i, "k0": k0, "degree": poly.degree, "bound": n - d + i, "fit": poly.to_json()}
        fits.append(entry)
        if poly.degree > n - d + i:
            return Verdict(claim, False, {"d": d, "fits": fits, "violation": entry})
    return Verdict(claim, True, {"d": d, "fits": fits})


def rees_criterion_verdict(rows, reduction: int | None, n: int, claim: str = "rees-criterion") -> Verdict:
    """Compare the growth degree of finite lengths with the reduction test.

    A reduction forces degree < n; with no reduction found, degree n is the
    consistent outcome and degree < n is inconclusive (a reduction may exist
    beyond the tested range).
    """
    lengths = {}
    for row in rows:
        if row.length is None:
            raise ValueError(f"row k={row.k} does not have finite length")
        lengths[row.k] = row.length
    fit = _fit_or_none(lengths)
    if fit is None:
        return Verdict(claim, None, {"reason": "lengths did not fit a polynomial", "reduction": reduction})
    poly, k0 = fit
    witness = {"reduction": reduction, "degree": poly.degree, "k0": k0, "fit": poly.to_json(), "n": n}
    if poly.degree > n:
        return Verdict(claim, False, witness)
    if reduction is not None:
        return Verdict(claim, poly.degree < n, witness)
    if poly.degree == n:
        return Verdict(claim, True, witness)
    return Verdict(claim, None, witness)
