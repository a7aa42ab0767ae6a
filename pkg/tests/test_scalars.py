"""Exact scalar kernel: radicals, intervals, enclosures."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcayley.scalars import QQ, Interval, Radical, sqrt_bounds, sqrt_rational

rationals = st.fractions(min_value=0, max_value=1000, max_denominator=200)
pos_rationals = st.fractions(min_value=Fraction(1, 200), max_value=1000, max_denominator=200)


def test_sqrt_bounds_encloses():
    lo, hi = sqrt_bounds(QQ(2), 96)
    assert lo * lo <= 2 <= hi * hi
    assert hi - lo < QQ(1, 2**90)


@given(pos_rationals)
def test_sqrt_bounds_property(q):
    lo, hi = sqrt_bounds(QQ(q), 64)
    assert 0 <= lo <= hi
    assert lo * lo <= q <= hi * hi


def test_interval_arithmetic_directed():
    a = Interval(QQ(1), QQ(2))
    b = Interval(QQ(-1), QQ(3))
    assert (a + b).lo == 0 and (a + b).hi == 5
    assert (a * b).lo == -2 and (a * b).hi == 6
    assert (a ** 2).lo == 1 and (a ** 2).hi == 4
    inv = a.inverse()
    assert inv.lo == QQ(1, 2) and inv.hi == 1
    with pytest.raises(ZeroDivisionError):
        b.inverse()


def test_interval_sqrt_and_contains():
    iv = Interval(QQ(2), QQ(3)).sqrt()
    assert iv.lo * iv.lo <= 2 and 3 <= iv.hi * iv.hi
    assert Interval(QQ(0), QQ(4)).contains(QQ(4))
    assert not Interval(QQ(0), QQ(4)).contains(QQ(5))
    assert Interval(QQ(1), QQ(2)).certainly_lt(Interval(QQ(3), QQ(4)))


def test_radical_perfect_square_collapse():
    two = sqrt_rational(2)
    assert (two * two).as_rational() == 2
    assert sqrt_rational(QQ(9, 4)).as_rational() == QQ(3, 2)
    # large prime squares must collapse as well (not just small factors)
    big = sqrt_rational(29 * 29 * 377)
    assert big == 29 * sqrt_rational(377)


def test_radical_merging_equivalent_radicands():
    assert sqrt_rational(8) == 2 * sqrt_rational(2)
    assert sqrt_rational(8) - 2 * sqrt_rational(2) == Radical.from_rational(0)
    assert sqrt_rational(QQ(1, 2)) * sqrt_rational(2) == Radical.from_rational(1)


def test_radical_multi_term_products():
    s = sqrt_rational(2) + sqrt_rational(3)
    sq = s * s
    assert sq == Radical.from_rational(5) + 2 * sqrt_rational(6)
    assert not sq.is_rational


def test_radical_zero_iff_all_coefficients_zero():
    v = sqrt_rational(2) + sqrt_rational(3) - sqrt_rational(3) - sqrt_rational(2)
    assert v.is_zero()
    w = sqrt_rational(2) - sqrt_rational(3)
    assert not w.is_zero() and w.sign() == -1


def test_radical_signs_and_ordering():
    golden = (Radical.from_rational(3) + sqrt_rational(5)) / 2
    assert golden > QQ(2618, 1000)
    assert golden < QQ(2619, 1000)
    # the larger root of a^2 - 3a + 1 = 0
    assert golden * golden - 3 * golden + 1 == Radical.from_rational(0)


def test_radical_division():
    x = 3 * sqrt_rational(7)
    assert x / x == Radical.from_rational(1)
    assert Radical.from_rational(1) / sqrt_rational(2) == sqrt_rational(QQ(1, 2))
    with pytest.raises(NotImplementedError):
        Radical.from_rational(1) / (sqrt_rational(2) + sqrt_rational(3))


def test_radical_interval_encloses_value():
    v = sqrt_rational(2) - sqrt_rational(3) + Radical.from_rational(QQ(7, 3))
    iv = v.interval(96)
    approx = 2 ** 0.5 - 3 ** 0.5 + 7 / 3
    assert iv.lo <= QQ(Fraction(approx).limit_denominator(10**12)) + QQ(1, 10**9)
    assert float(iv.width) < 1e-25


@given(pos_rationals, pos_rationals)
@settings(max_examples=60)
def test_radical_product_square_property(p, q):
    prod = sqrt_rational(QQ(p)) * sqrt_rational(QQ(q))
    assert (prod * prod).as_rational() == QQ(p) * QQ(q)


@given(pos_rationals, pos_rationals)
@settings(max_examples=60)
def test_radical_binomial_square(p, q):
    s = sqrt_rational(QQ(p)) + sqrt_rational(QQ(q))
    expected = Radical.from_rational(QQ(p) + QQ(q)) + 2 * sqrt_rational(QQ(p) * QQ(q))
    assert s * s == expected
