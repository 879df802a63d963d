import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wwlab.fixedpoint import (
    HALF,
    MASK,
    NAMED_FRACTIONS,
    SCALE,
    CirclePoint,
    frac_add,
    frac_from_float,
    frac_from_hex,
    frac_from_ratio,
    frac_mul_round,
    frac_neg,
    frac_scale_int,
    frac_sqrt_ratio,
    frac_sub,
    frac_to_float,
    frac_to_hex,
    parse_frac,
)

fracs = st.integers(min_value=0, max_value=MASK)


def _circle_gap(f: int, target: Fraction) -> Fraction:
    d = abs(Fraction(f, SCALE) - (target % 1))
    return min(d, 1 - d)


def test_simple_ratios_exact():
    assert frac_from_ratio(1, 4) == 1 << 62
    assert frac_from_ratio(1, 2) == HALF
    assert frac_from_ratio(3, 4) == 3 << 62
    assert frac_from_ratio(5, 4) == 1 << 62  # reduced mod 1
    assert frac_from_ratio(-1, 4) == 3 << 62


@given(st.integers(-(10**12), 10**12), st.integers(1, 10**12))
def test_ratio_encoding_nearest(num, den):
    f = frac_from_ratio(num, den)
    assert _circle_gap(f, Fraction(num, den)) <= Fraction(1, 2**65)


@given(st.floats(-100.0, 100.0, allow_nan=False))
def test_float_encoding_nearest(x):
    f = frac_from_float(x)
    assert _circle_gap(f, Fraction(x) % 1) <= Fraction(1, 2**65)


@pytest.mark.parametrize(
    "name,expr",
    [
        ("golden", "(sqrt(5)-1)/2"),
        ("sqrt2", "sqrt(2)-1"),
        ("sqrt3", "sqrt(3)-1"),
        ("sqrt5", "sqrt(5)-2"),
    ],
)
def test_named_irrationals_are_nearest(name, expr):
    mpmath.mp.dps = 50
    target = mpmath.mpf(eval(expr, {"sqrt": mpmath.sqrt}))
    expected = int(mpmath.nint(target * mpmath.mpf(2) ** 64))
    assert NAMED_FRACTIONS[name] == expected & MASK


@given(st.integers(0, 10**9), st.integers(1, 10**6))
def test_sqrt_ratio_nearest(num, den):
    f = frac_sqrt_ratio(num, den)
    mpmath.mp.dps = 50
    target = mpmath.sqrt(mpmath.mpf(num) / den) * mpmath.mpf(2) ** 64
    # distance to the unreduced value, measured mod 2^64
    gap = abs((f - target) % SCALE)
    gap = min(gap, SCALE - gap)
    assert gap <= 0.5 + 1e-12


@given(fracs, fracs)
def test_addition_exactly_invertible(x, a):
    assert frac_sub(frac_add(x, a), a) == x
    assert frac_add(x, frac_neg(x)) == 0


@given(fracs, fracs, fracs)
def test_addition_associative(x, y, z):
    assert frac_add(frac_add(x, y), z) == frac_add(x, frac_add(y, z))


@given(fracs, fracs)
def test_mul_round_nearest_ties_up(a, b):
    got = frac_mul_round(a, b)
    exact = Fraction(a, SCALE) * Fraction(b, SCALE)
    expected = math.floor(exact * SCALE + Fraction(1, 2)) % SCALE
    assert got == expected


@given(fracs, st.integers(-(2**70), 2**70))
def test_scale_int_matches_bigint(f, m):
    assert frac_scale_int(f, m) == (f * m) % SCALE


def test_hex_round_trip():
    for f in (0, 1, HALF, MASK, 1 << 62):
        assert frac_from_hex(frac_to_hex(f)) == f
    with pytest.raises(ValueError):
        frac_from_hex("0x1" + "0" * 16)


def test_parse_variants():
    assert parse_frac("1/4") == 1 << 62
    assert parse_frac("0.25") == 1 << 62
    assert parse_frac(0.25) == 1 << 62
    assert parse_frac(3) == 0
    assert parse_frac("golden") == NAMED_FRACTIONS["golden"]
    assert parse_frac(frac_to_hex(12345)) == 12345


def test_to_float_round_trip_error():
    for f in (0, 1, HALF, MASK, 123456789):
        assert abs(frac_to_float(f) - f / SCALE) == 0.0


def test_circle_point_ops():
    a = CirclePoint.from_ratio(1, 4)
    b = CirclePoint.from_ratio(1, 2)
    assert (a + b).frac == 3 << 62
    assert (a - b).frac == 3 << 62  # -1/4 wraps to 3/4
    assert (-a).frac == 3 << 62
    assert a.times_int(3).frac == 3 << 62
    assert a.times_int(-1).frac == 3 << 62
    assert CirclePoint.parse("1/4") == a
    assert a.to_float() == 0.25
