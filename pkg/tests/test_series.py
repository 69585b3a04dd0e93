from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tightcm.errors import NotAUnit, NotDivisible, TruncationMismatch
from tightcm.series import Matrix, SeriesRing, TruncatedSeries

R = SeriesRing()
R3 = SeriesRing(3)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def series(ring=SeriesRing(6)):
    return st.lists(rationals, min_size=ring.N, max_size=ring.N).map(ring.poly)


def test_default_truncation_is_16():
    assert R.N == 16
    assert len(R.one.coeffs) == 16


def test_ring_rejects_small_order():
    with pytest.raises(ValueError):
        SeriesRing(1)


def test_difference_of_squares():
    t = R.t
    assert (1 + t) * (1 - t) == 1 - t * t


def test_product_truncates_at_boundary():
    assert (R.t * R.monomial(R.N - 1)).is_zero()


def test_additive_inverse():
    t = R.t
    assert ((1 + t) + (-1 - t)).is_zero()


def test_mixed_orders_rejected():
    with pytest.raises(TruncationMismatch):
        R.one + R3.one


def test_divisible_by_t():
    t = R.t
    assert (t + t * t).divisible_by_t()
    assert not (1 + t).divisible_by_t()
    assert R.zero.divisible_by_t()


def test_invert_one_and_geometric_series():
    assert R.one.invert() == 1
    assert (1 - R.t).invert() == R.poly([1] * R.N)


def test_invert_two_plus_t_at_order_three():
    got = (2 + R3.t).invert()
    assert got.coeffs == (Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8))
    assert (2 + R3.t) * got == 1


def test_invert_non_unit():
    with pytest.raises(NotAUnit):
        R.t.invert()


def test_shift_down_examples():
    t = R.t
    assert (t * t).shift_down(1) == t
    assert (t + t * t * t).shift_down(1) == 1 + t * t
    with pytest.raises(NotDivisible):
        (1 + t).shift_down(1)


def test_shift_down_zeroes_top_coefficients():
    s = R.monomial(1) + R.monomial(R.N - 1)
    down = s.shift_down(1)
    assert down.coeffs[R.N - 1] == 0
    assert down.coeffs[R.N - 2] == 1


def test_string_forms():
    s = R.poly([1, Fraction(-1, 2)])
    assert s.to_strings() == ["1", "-1/2"]
    assert str(s) == "1 - 1/2*t"
    assert R.zero.to_strings() == ["0"]


def test_with_order_round_trip():
    s = R.poly([1, 2, 3])
    assert s.with_order(20).with_order(16) == s
    assert s.with_order(2) == SeriesRing(2).poly([1, 2])


def test_valuation():
    assert R.zero.valuation() is None
    assert (R.monomial(3) + R.monomial(5)).valuation() == 3


def test_matrix_product_and_det():
    t = R.t
    x = Matrix([[t, R(2)], [R.zero, R.one]])
    y = Matrix([[R.one, R(-2)], [R.zero, t]])
    assert x @ y == Matrix.scalar(t)
    assert x.det() == t


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(series())
def test_invert_of_units(s):
    if s.is_unit():
        assert s * s.invert() == 1
    else:
        with pytest.raises(NotAUnit):
            s.invert()


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=4), st.integers(1, 2))
def test_shift_down_inverts_shift_up_for_low_degree(coeffs, d):
    ring = SeriesRing(6)
    s = ring.poly(coeffs).shift_up(d)  # degree < N - d by construction
    assert s.shift_down(d).shift_up(d) == s


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_divisibility_of_sum_depends_on_constant_terms(a, b):
    assert (a + b).divisible_by_t() == (a.constant + b.constant == 0)


def test_series_values_are_exact_fractions():
    s = R.poly(["1/3", 2])
    assert all(isinstance(c, Fraction) for c in s.coeffs)
    assert isinstance(s, TruncatedSeries)
