from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freearr.exactmath import (
    MvPoly,
    as_rational,
    mat_rank,
    monomials,
    nullspace,
    poly_arith,
    poly_det,
    reduce_mod_linear,
    sparse_rank,
)

x, y, z = (MvPoly.var(i, 3) for i in range(3))
ONE = MvPoly.const(1, 3)
ZERO = MvPoly.zero(3)


def test_poly_arith_examples():
    assert poly_arith(x + y, x - y, "mul") == x * x - y * y
    assert poly_arith(x + y, ZERO, "add") == x + y
    diff = poly_arith(x, x, "sub")
    assert diff.terms == {}
    with pytest.raises(ValueError):
        poly_arith(x, MvPoly.var(0, 2), "add")


def test_poly_det_examples():
    eye = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
    assert poly_det(eye) == ONE
    assert poly_det([[x, ZERO, ZERO], [ZERO, y, ZERO], [ZERO, ZERO, z]]) == x * y * z
    row = [x + y, z, x * y]
    assert poly_det([row, row, [ONE, x, z]]).is_zero()
    with pytest.raises(ValueError):
        poly_det([[x, y]])


def test_reduce_mod_linear_examples():
    assert reduce_mod_linear(x, x - y) == y
    assert reduce_mod_linear(x * x - y * y, x - y).is_zero()
    assert reduce_mod_linear(x * y, z) == x * y
    with pytest.raises(ValueError):
        reduce_mod_linear(x, ZERO)
    with pytest.raises(ValueError):
        reduce_mod_linear(x, x * y)


def test_mat_rank_examples():
    assert mat_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert mat_rank([[0, 0], [0, 0]]) == 0
    assert mat_rank([[1, 2], [2, 4]]) == 1
    assert mat_rank([[Fraction(1, 2), 1], [1, 2], [0, 3]]) == 2


def test_big_integers_do_not_overflow():
    big = 10 ** 40
    assert mat_rank([[big, 1], [big * big, big]]) == 1
    assert sparse_rank([{0: big, 1: 1}, {0: 1, 1: big}]) == 2


def test_nullspace():
    basis = nullspace([[1, 1, 0], [0, 1, 1]], 3)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and v[1] + v[2] == 0


def test_as_rational_rejects_decimals():
    assert as_rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(ValueError):
        as_rational("0.5")
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_monomials_count():
    assert len(monomials(4, 5)) == 56
    assert monomials(3, 0) == [(0, 0, 0)]


small = st.integers(-3, 3)


@st.composite
def polys(draw, nvars=3, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        d = draw(st.integers(0, max_deg))
        mono = draw(st.sampled_from(monomials(nvars, d)))
        terms[mono] = draw(small)
    return MvPoly(nvars, terms)


@st.composite
def linear_forms(draw, nvars=3):
    coeffs = draw(st.lists(small, min_size=nvars, max_size=nvars).filter(any))
    return MvPoly.linear(coeffs)


points = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points)
def test_arithmetic_agrees_with_evaluation(a, b, pt):
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
    assert (a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt)
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


@settings(max_examples=60, deadline=None)
@given(polys(), linear_forms(), polys(max_deg=2))
def test_reduction_is_a_remainder(p, l, q):
    r = reduce_mod_linear(p, l)
    # p - r is divisible by l, and adding multiples of l does not change the remainder
    assert reduce_mod_linear(p - r, l).is_zero()
    assert reduce_mod_linear(p + l * q, l) == r
    assert reduce_mod_linear(l * q, l).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.lists(polys(max_deg=2), min_size=9, max_size=9), points)
def test_det_alternates_and_matches_evaluation(entries, pt):
    m = [entries[0:3], entries[3:6], entries[6:9]]
    d = poly_det(m)
    swapped = poly_det([m[1], m[0], m[2]])
    assert swapped == -d
    num = [[e.evaluate(pt) for e in row] for row in m]
    expected = (
        num[0][0] * (num[1][1] * num[2][2] - num[1][2] * num[2][1])
        - num[0][1] * (num[1][0] * num[2][2] - num[1][2] * num[2][0])
        + num[0][2] * (num[1][0] * num[2][1] - num[1][1] * num[2][0])
    )
    assert d.evaluate(pt) == expected
