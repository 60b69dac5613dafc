import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hilbpow import (
    DimensionMismatch,
    IdealParseError,
    MonomialIdeal,
    colon,
    contains,
    format_ideal,
    ideal_sum,
    intersect,
    minimal_primes,
    minimalize,
    parse_ideal,
    power,
    product,
    radical,
    saturate,
)
from hilbpow.monomial import (
    _minimal,
    _minimal_numpy,
    colon_monomial,
    is_subideal,
    is_vertex_cover,
    monomials_of_degree,
    saturate_by_iteration,
    saturation_step_bound,
)
from hilbpow.textio import ideal_from_json, ideal_to_json

from . import oracles


def I2(text):
    return parse_ideal(text.replace("x", "x1").replace("y", "x2"), 2)


def I3(text):
    return parse_ideal(text.replace("x", "x1").replace("y", "x2").replace("z", "x3"), 3)


def monomial(n, max_exp=4):
    return st.tuples(*[st.integers(0, max_exp)] * n)


def ideals(n, max_gens=5, max_exp=3):
    return st.lists(monomial(n, max_exp), min_size=1, max_size=max_gens).map(lambda g: MonomialIdeal(n, g))


# -- examples ------------------------------------------------------------------


def test_minimalize_examples():
    assert minimalize([(2, 0), (2, 1), (0, 1)], 2) == I2("x^2, y")
    assert minimalize([(1, 0)], 2).gens == ((1, 0),)
    assert minimalize([(1, 1), (2, 1), (1, 2)], 2).gens == ((1, 1),)


def test_minimalize_rejects_mixed_lengths():
    with pytest.raises(DimensionMismatch):
        minimalize([(1, 0), (1, 0, 0)], 2)
    with pytest.raises(ValueError):
        MonomialIdeal(2, [(-1, 0)])


def test_contains_examples():
    I = I2("x^2, y")
    assert contains(I, (2, 1))
    assert not contains(I, (1, 0))
    assert contains(MonomialIdeal.unit(2), (0, 0))
    assert not contains(MonomialIdeal.zero(2), (5, 5))


def test_product_and_sum_examples():
    assert product(I2("x"), I2("y")) == I2("x*y")
    m = MonomialIdeal.maximal(2)
    assert product(m, m) == I2("x^2, x*y, y^2")
    assert product(I2("x^2, y"), I2("x, y^2")) == I2("x^3, x*y, y^3")
    assert product(I2("x^2, y"), MonomialIdeal.unit(2)) == I2("x^2, y")
    assert product(I2("x^2, y"), MonomialIdeal.zero(2)).is_zero
    assert ideal_sum(I2("x^2"), I2("x*y, x^3")) == I2("x^2, x*y")


def test_power_examples():
    assert power(MonomialIdeal.maximal(2), 2) == I2("x^2, x*y, y^2")
    assert power(I2("x^3, y"), 0).is_unit
    assert power(I2("x^2, x*y"), 2) == I2("x^4, x^3*y, x^2*y^2")
    with pytest.raises(ValueError):
        power(I2("x"), -1)


def test_intersect_examples():
    assert intersect(I2("x"), I2("y")) == I2("x*y")
    assert intersect(I2("x^2, y"), I2("x, y^2")) == I2("x^2, x*y, y^2")
    I = I2("x^3, x*y^2")
    assert intersect(I, I) == I


def test_colon_examples():
    assert colon_monomial(I2("x^2, x*y"), (1, 0)) == I2("x, y")
    assert colon(I2("x^2, y"), MonomialIdeal.maximal(2)) == I2("x, y")
    I = I2("x^2*y, y^3")
    assert colon(I, MonomialIdeal.unit(2)) == I
    with pytest.raises(ValueError):
        colon(I, MonomialIdeal.zero(2))


def test_saturate_examples():
    m = MonomialIdeal.maximal(2)
    assert saturate(I2("x^2, x*y"), m) == I2("x")
    assert saturate(I2("x^2"), I2("y")) == I2("x^2")
    assert saturate(m, m).is_unit


def test_radical_examples():
    assert radical(I2("x^2, y^3")) == MonomialIdeal.maximal(2)
    assert radical(I2("x^2*y")) == I2("x*y")
    assert radical(MonomialIdeal.unit(2)).is_unit


def test_minimal_primes_examples():
    assert minimal_primes(I2("x*y")) == [frozenset({0}), frozenset({1})]
    assert minimal_primes(I2("x^2, x*y")) == [frozenset({0})]
    assert sorted(minimal_primes(I3("x*y, x*z, y*z")), key=sorted) == [
        frozenset({0, 1}),
        frozenset({0, 2}),
        frozenset({1, 2}),
    ]
    for bad in (MonomialIdeal.unit(2), MonomialIdeal.zero(2)):
        with pytest.raises(ValueError):
            minimal_primes(bad)


def test_unit_and_zero_representation():
    assert MonomialIdeal.unit(3).gens == ((0, 0, 0),)
    assert MonomialIdeal.zero(3).gens == ()
    assert MonomialIdeal(2, [(3, 1), (0, 0)]).is_unit


def test_mixing_dimensions_is_an_error():
    with pytest.raises(DimensionMismatch):
        product(MonomialIdeal.maximal(2), MonomialIdeal.maximal(3))


def test_equality_is_structural():
    a = MonomialIdeal(2, [(0, 1), (2, 0), (2, 2)])
    b = MonomialIdeal(2, [(2, 0), (0, 1)])
    assert a == b and hash(a) == hash(b)
    assert a.gens == tuple(sorted(a.gens, reverse=True))


# -- text io -------------------------------------------------------------------


def test_parse_and_format():
    I = parse_ideal("x1^2*x2, x3", 3)
    assert I.gens == ((2, 1, 0), (0, 0, 1))
    assert format_ideal(I) == "x1^2*x2, x3"
    assert parse_ideal("x1 x2^2", 2).gens == ((1, 2),)
    assert parse_ideal("1", 2).is_unit and format_ideal(MonomialIdeal.unit(2)) == "1"
    assert parse_ideal("0", 2).is_zero and format_ideal(MonomialIdeal.zero(2)) == "0"
    J = parse_ideal('{"n":3,"gens":[[2,1,0],[0,0,1]]}', 3)
    assert J == I
    assert ideal_from_json(ideal_to_json(I)) == I


@pytest.mark.parametrize("text", ["x4", "x1^", "y", "x1^2,,x2", "x0"])
def test_parse_errors(text):
    with pytest.raises(IdealParseError):
        parse_ideal(text, 3)


def test_parse_json_dimension_mismatch():
    with pytest.raises((IdealParseError, ValueError)):
        parse_ideal('{"n":2,"gens":[[1,0]]}', 3)


@given(ideals(3))
def test_format_parse_round_trip(I):
    assert parse_ideal(format_ideal(I), 3) == I


# -- invariants ----------------------------------------------------------------


@settings(max_examples=150)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(monomial(n), max_size=12).map(lambda g: (n, g))))
def test_minimalize_idempotent_and_antichain(case):
    n, gens = case
    I = minimalize(gens, n)
    assert minimalize(I.gens, n) == I
    for a, b in itertools.permutations(I.gens, 2):
        assert not oracles.divides(a, b)
    assert set(I.gens) == oracles.minimal(gens)


def test_numpy_minimalization_matches_pure_python():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(2, 4)
        gens = list({tuple(rng.randint(0, 6) for _ in range(n)) for _ in range(600)})
        assert tuple(sorted(_minimal_numpy(gens), reverse=True)) == tuple(sorted(oracles.minimal(gens), reverse=True))
        assert _minimal(gens) == tuple(sorted(oracles.minimal(gens), reverse=True))


@settings(max_examples=60, deadline=None)
@given(ideals(3, max_gens=4), st.integers(0, 3), st.integers(0, 3))
def test_power_products_contained(I, k, l):
    left = product(power(I, k), power(I, l))
    right = power(I, k + l)
    assert all(contains(right, g) for g in left.gens)


@settings(max_examples=60, deadline=None)
@given(ideals(3, max_gens=4), st.integers(0, 4))
def test_power_matches_naive(I, k):
    assert set(power(I, k).gens) == oracles.minimal(oracles.naive_power(I.gens, k, 3) or {(0, 0, 0)})


@settings(max_examples=40, deadline=None)
@given(ideals(3, max_gens=4, max_exp=3), st.integers(2, 8))
def test_colon_identity(I, k):
    Ik, Ik1 = power(I, k), power(I, k - 1)
    for i in range(3):
        x = tuple(int(j == i) for j in range(3))
        assert colon_monomial(Ik, x) == product(colon_monomial(Ik1, x), I)


@given(ideals(3), ideals(3, max_gens=3), monomial(3, 6))
def test_colon_definition(I, J, m):
    if J.is_zero:
        return
    lhs = contains(colon(I, J), m)
    rhs = all(contains(I, tuple(a + b for a, b in zip(m, g))) for g in J.gens)
    assert lhs == rhs


@settings(max_examples=150)
@given(ideals(3), ideals(3, max_gens=3))
def test_saturation_properties(I, J):
    S = saturate(I, J)
    assert saturate(S, J) == S
    assert is_subideal(I, S)
    assert S == saturate_by_iteration(I, J)


def test_saturation_bound_is_needed_beyond_generator_degree():
    # (x^2, y^2) : m takes three colon steps, more than its generator degree.
    I = I2("x^2, y^2")
    m = MonomialIdeal.maximal(2)
    steps, cur = 0, I
    while True:
        nxt = colon(cur, m)
        if nxt == cur:
            break
        cur, steps = nxt, steps + 1
    assert steps == 3 > I.max_degree()
    assert steps <= saturation_step_bound(I, m)


@settings(max_examples=100)
@given(ideals(3), monomial(3, 5))
def test_saturation_membership_oracle(I, m):
    if I.is_zero:
        return
    expected = oracles.in_saturation(I.gens, m, 3)
    assert contains(saturate(I, MonomialIdeal.maximal(3)), m) == expected


@given(ideals(3), ideals(3), monomial(3, 6))
def test_intersect_membership(I, J, m):
    assert contains(intersect(I, J), m) == (contains(I, m) and contains(J, m))


@given(ideals(3), ideals(3), monomial(3, 6))
def test_sum_membership(I, J, m):
    assert contains(ideal_sum(I, J), m) == (contains(I, m) or contains(J, m))


@settings(max_examples=150)
@given(ideals(4, max_gens=5, max_exp=2))
def test_minimal_primes_are_minimal_covers(I):
    if I.is_zero or I.is_unit:
        return
    covers = minimal_primes(I)
    rad = radical(I)
    for cover in covers:
        assert all(set(cover) & {i for i, e in enumerate(g) if e} for g in rad.gens)
        for i in cover:
            assert not is_vertex_cover(cover - {i}, I)
    exhaustive = [
        frozenset(s)
        for r in range(5)
        for s in itertools.combinations(range(4), r)
        if is_vertex_cover(s, I) and not any(is_vertex_cover(set(s) - {i}, I) for i in s)
    ]
    assert set(covers) == set(exhaustive)


def test_monomials_of_degree():
    assert sorted(monomials_of_degree(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert len(list(monomials_of_degree(4, 5))) == 56
