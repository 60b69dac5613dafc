from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from hilbpow import EMPTY, parse_ideal
from hilbpow.asymptotics import (
    InsufficientSamples,
    QuasiPolynomial,
    RationalPolynomial,
    TheoremViolation,
    Verdict,
    degree_bound_verdict,
    equal_leading_verdict,
    fit_polynomial,
    fit_quasipolynomial,
    interpolate,
    normalized_limit,
    rees_criterion_verdict,
    stabilized_value,
)
from hilbpow.families import FamilySpec, generate


def P(*coeffs):
    return RationalPolynomial(tuple(Fraction(c) for c in coeffs))


def qp(*pieces):
    return QuasiPolynomial(len(pieces), 0, tuple(P(*c) for c in pieces))


# -- RationalPolynomial --------------------------------------------------------


def test_polynomial_basics():
    p = P(0, Fraction(1, 2), Fraction(1, 2))
    assert p.degree == 2 and p.leading == Fraction(1, 2)
    assert p(4) == 10
    assert P().degree == -1 and P(0, 0).is_zero
    assert p.text() == "1/2*k^2 + 1/2*k"
    assert p.to_json()["coefficients"] == ["0", "1/2", "1/2"]


def test_binomial_basis_of_standard_examples():
    # k(k+1)/2 = binom(k+2, 2) - binom(k+1, 1)
    p = P(0, Fraction(1, 2), Fraction(1, 2))
    assert p.binomial_coefficients() == (1, 1, 0)
    # k = binom(k+1, 1) - binom(k, 0)
    assert P(0, 1).binomial_coefficients() == (1, 1)


# -- fit_polynomial ------------------------------------------------------------


def test_fit_polynomial_examples():
    assert fit_polynomial({k: k * k for k in range(11)}) == (P(0, 0, 1), 0)
    assert fit_polynomial({k: 2**k for k in range(11)}) is None


def test_fit_polynomial_prefix_perturbation():
    # 5, 1, 4, 9, ...: only f(0) is off, since f(1) = 1 = 1^2.
    seq = {k: k * k for k in range(11)}
    seq[0] = 5
    assert fit_polynomial(seq) == (P(0, 0, 1), 1)
    seq[1] = 7
    assert fit_polynomial(seq) == (P(0, 0, 1), 2)


def test_fit_polynomial_respects_max_k0():
    seq = {k: k * k for k in range(12)}
    seq[0], seq[1], seq[2] = 9, 9, 9
    assert fit_polynomial(seq, max_k0=2) is None
    assert fit_polynomial(seq, max_k0=3) == (P(0, 0, 1), 3)


def test_fit_polynomial_needs_samples():
    with pytest.raises(InsufficientSamples):
        fit_polynomial({0: 1, 1: 1, 2: 1})


def test_fit_polynomial_requires_verification_tail():
    # a cubic on five points leaves only one verification sample
    assert fit_polynomial({k: k**3 for k in range(5)}) is None
    assert fit_polynomial({k: k**3 for k in range(7)}) == (P(0, 0, 0, 1), 0)


@settings(max_examples=100)
@given(
    st.lists(st.fractions(max_denominator=6).filter(lambda q: abs(q) < 50), min_size=1, max_size=5),
    st.randoms(use_true_random=False),
)
def test_fit_agrees_with_lagrange_on_any_subset(coeffs, rnd):
    p = RationalPolynomial(tuple(coeffs))
    seq = {k: p(k) for k in range(p.degree + 8)}
    fit, k0 = fit_polynomial(seq)
    assert k0 == 0
    assert fit == p
    pts = rnd.sample(sorted(seq), max(fit.degree, 0) + 1)
    assert interpolate([(k, seq[k]) for k in pts]) == fit


# -- fit_quasipolynomial -------------------------------------------------------


def test_fit_quasipolynomial_examples():
    q = fit_quasipolynomial({k: k + k % 2 for k in range(20)})
    assert q.period == 2
    assert q.pieces == (P(0, 2), P(2, 2))
    q = fit_quasipolynomial({k: k * (k + 1) // 2 for k in range(20)})
    assert q.period == 1 and q.pieces == (P(0, Fraction(1, 2), Fraction(1, 2)),)
    assert fit_quasipolynomial({k: 2**k for k in range(20)}) is None


def test_fit_quasipolynomial_offset_uses_failing_keys():
    seq = {k: k + k % 3 for k in range(1, 31)}
    seq[1] = 100
    q = fit_quasipolynomial(seq)
    assert q.period == 3 and q.offset == 2
    assert all(q(k) == seq[k] for k in seq if k >= q.offset)


def test_fit_quasipolynomial_needs_samples():
    with pytest.raises(InsufficientSamples):
        fit_quasipolynomial({1: 1, 2: 2})


@st.composite
def quasipolynomials(draw, periods=st.integers(1, 4)):
    g = draw(periods)
    deg = draw(st.integers(0, 3))
    lead = draw(st.fractions(min_value=Fraction(1, 6), max_value=5, max_denominator=6))
    pieces = []
    for _ in range(g):
        lower = draw(st.lists(st.integers(-5, 5), min_size=deg, max_size=deg))
        pieces.append(RationalPolynomial(tuple(Fraction(c) for c in lower) + (lead,)))
    offset = draw(st.integers(0, 3))
    return QuasiPolynomial(g, offset, tuple(pieces))


@settings(max_examples=120, deadline=None)
@given(quasipolynomials())
def test_quasipolynomial_round_trip(q):
    samples = 3 * q.period * (q.pieces[0].degree + 1 + 3)
    seq = {k: q(k) for k in range(q.offset, q.offset + samples)}
    fit = fit_quasipolynomial(seq)
    assert fit is not None
    assert q.period % fit.period == 0
    assert fit.offset <= q.offset
    assert all(fit(k) == q(k) for k in seq)
    if len(set(q.pieces)) == q.period and fit.period == q.period:
        assert fit.pieces == q.pieces


@given(quasipolynomials(periods=st.just(2)))
def test_round_trip_recovers_distinct_pieces_exactly(q):
    assume(q.pieces[0] != q.pieces[1])
    seq = {k: q(k) for k in range(0, 2 * (q.pieces[0].degree + 5))}
    fit = fit_quasipolynomial(seq)
    assert fit.period == 2 and fit.pieces == q.pieces and fit.offset == 0


# -- stabilized_value ----------------------------------------------------------


def test_stabilized_value_examples():
    assert stabilized_value([2, 1, 1, 1, 1, 1]) == (1, 1)
    assert stabilized_value([3, 3, 3]) == (3, 0)
    assert stabilized_value([1, 2, 1, 2]) is None
    assert stabilized_value({5: EMPTY, 6: 0, 7: 0}) == (0, 6)
    with pytest.raises(ValueError):
        stabilized_value([])


# -- normalized_limit ----------------------------------------------------------


def test_normalized_limit_examples():
    sat = fit_quasipolynomial({k: k * (k + 1) // 2 for k in range(1, 21)})
    assert normalized_limit(sat, 2, 0) == Fraction(1, 2)
    closure = fit_quasipolynomial({k: 3 * k for k in range(1, 16)})
    assert normalized_limit(closure, 2, 0) == 0
    assert normalized_limit(qp((0,)), 2, EMPTY) == 0


def test_normalized_limit_rescales_by_period():
    # e_0(k) = k^2 on both residues: pieces m -> (2m + r)^2 have leading 4
    q = fit_quasipolynomial({k: k * k + k % 2 for k in range(40)})
    assert q.period == 2 and q.pieces[0].leading == 4
    assert normalized_limit(q, 2, 0) == 1


@given(st.fractions(min_value=Fraction(1, 10), max_value=10), st.integers(0, 3))
def test_normalized_limit_on_single_piece_is_leading(c, D):
    q = QuasiPolynomial(1, 0, (RationalPolynomial((Fraction(0),) * D + (c,)),))
    assert normalized_limit(q, D + 1, 1) == c


def test_normalized_limit_errors():
    with pytest.raises(TheoremViolation):
        normalized_limit(qp((0, 0, 0, 1)), 2, 0)
    with pytest.raises(ValueError):
        normalized_limit(qp((0, 1), (0, 0, 1)), 2, 0)


# -- verdicts ------------------------------------------------------------------


def test_equal_leading_examples():
    assert equal_leading_verdict(qp((0, 2), (2, 2))).holds is True
    v = equal_leading_verdict(qp((0, 1), (0, 0, 1)))
    assert v.holds is False and v.witness["first_mismatch"] == 1
    assert equal_leading_verdict(qp((1, 1))).holds is True


def test_failed_verdict_needs_witness():
    with pytest.raises(ValueError):
        Verdict("rees-criterion", False, {})
    assert Verdict("rees-criterion", None).status == "inconclusive"


def _rows(kind, I, J=None, k=(1, 15)):
    n = 2
    return generate(FamilySpec(kind, parse_ideal(I, n), None if J is None else parse_ideal(J, n), k))


def test_degree_bound_examples():
    v = degree_bound_verdict(_rows("QUOTIENT_RING_POWERS", "x1^2, x1*x2"), 2)
    assert v.holds is True and v.witness["d"] == 1
    assert v.witness["fits"][0]["fit"]["text"] == "k"
    v = degree_bound_verdict(_rows("QUOTIENT_RING_POWERS", "x1, x2"), 2)
    assert v.holds is True and v.witness["fits"][0]["degree"] == 2
    assert degree_bound_verdict([], 2).holds is None


def test_rees_examples():
    rows = _rows("REES_PAIR", "x1^2, x1*x2, x2^2", "x1^2, x2^2")
    assert rees_criterion_verdict(rows, 1, 2).holds is True
    rows = _rows("CLOSURE_PAIR", "x1, x2", "x1^2, x2^3")
    v = rees_criterion_verdict(rows, None, 2, "thm-4.10-normal-pair")
    assert v.holds is True and v.witness["degree"] == 2
    rows = _rows("REES_PAIR", "x1^2, x2", "x1^2, x2")
    v = rees_criterion_verdict(rows, 0, 2)
    assert v.holds is True and v.witness["degree"] == -1


def test_rees_fails_when_reduction_but_full_degree():
    rows = _rows("CLOSURE_PAIR", "x1, x2", "x1^2, x2^3")
    v = rees_criterion_verdict(rows, 1, 2)
    assert v.holds is False and v.witness["degree"] == 2


def test_rees_inconclusive_without_witness_and_low_degree():
    rows = _rows("REES_PAIR", "x1^2, x1*x2, x2^2", "x1^2, x2^2")
    assert rees_criterion_verdict(rows, None, 2).holds is None
