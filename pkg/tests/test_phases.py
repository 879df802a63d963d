import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wwlab.errors import InputError
from wwlab.fixedpoint import HALF, MASK, SCALE, CirclePoint, frac_from_ratio
from wwlab.phases import (
    PolynomialPhase,
    TrigPolynomial,
    add_phases,
    phase_frac,
    phase_fracs,
    phase_value,
    phase_values,
    scale_phase,
    scale_phase_int,
    trig_eval,
)

fracs = st.integers(min_value=0, max_value=MASK)


class TestPhaseValue:
    def test_half_coefficient_full_turn(self):
        p = PolynomialPhase((HALF,))
        assert phase_value(p, 2) == 1 + 0j

    def test_zero_phase(self):
        p = PolynomialPhase((0, 0, 0))
        for n in (0, 1, 7, 10**6):
            assert phase_value(p, n) == 1 + 0j

    def test_quadratic_quarter(self):
        # c2 = 1/4 at n = 3: e(9/4) = e(1/4) = i
        p = PolynomialPhase((0, frac_from_ratio(1, 4)))
        assert phase_frac(p, 3) == frac_from_ratio(1, 4)
        assert abs(phase_value(p, 3) - 1j) < 1e-15

    def test_array_matches_scalar(self):
        p = PolynomialPhase((12345, 678910, HALF))
        n = np.arange(0, 500, dtype=np.uint64)
        arr = phase_fracs(p, n)
        assert all(int(arr[i]) == phase_frac(p, i) for i in range(500))
        vals = phase_values(p, n)
        assert np.max(np.abs(np.abs(vals) - 1.0)) < 4e-16

    @given(fracs, fracs, st.integers(0, 10**6))
    def test_unit_modulus(self, c1, c2, n):
        v = phase_value(PolynomialPhase((c1, c2)), n)
        assert abs(abs(v) - 1.0) < 4.5e-16  # 2 ulp


class TestModulationLaw:
    @given(
        st.lists(fracs, min_size=1, max_size=3),
        st.lists(fracs, min_size=1, max_size=3),
        st.integers(0, 10**5),
    )
    def test_product_is_sum_phase(self, ca, cb, n):
        p, q = PolynomialPhase(tuple(ca)), PolynomialPhase(tuple(cb))
        lhs = phase_value(p, n) * phase_value(q, n)
        rhs = phase_value(add_phases(p, q), n)
        assert abs(lhs - rhs) < 1e-14


class TestPeriodicity:
    @pytest.mark.parametrize("denom", [2, 4, 8])
    def test_rational_coefficients_periodic(self, denom):
        rng = np.random.default_rng(denom)
        ks = rng.integers(0, denom, 3)
        p = PolynomialPhase(tuple(frac_from_ratio(int(k), denom) for k in ks))
        for n in range(100):
            assert phase_frac(p, n + denom) == phase_frac(p, n)


class TestScale:
    def test_zero_scalar(self):
        p = PolynomialPhase((123, 456))
        assert scale_phase(p, 0).coeffs == (0, 0)

    def test_unit_scalar_identity(self):
        p = PolynomialPhase((123456789, MASK, HALF))
        assert scale_phase(p, 1) == p

    def test_half_of_third(self):
        p = PolynomialPhase((frac_from_ratio(1, 3),))
        out = scale_phase(p, Fraction(1, 2))
        gap = abs(Fraction(out.coeffs[0], SCALE) - Fraction(1, 6))
        assert gap <= Fraction(1, SCALE)

    def test_float_and_fraction_agree(self):
        p = PolynomialPhase((frac_from_ratio(2, 7), frac_from_ratio(5, 11)))
        assert scale_phase(p, 0.5) == scale_phase(p, Fraction(1, 2))

    def test_rescale_by_one_idempotent(self):
        p = PolynomialPhase((987654321, 1234567, 42))
        scaled = scale_phase(p, CirclePoint.parse("golden"))
        assert scale_phase(scaled, 1) == scaled

    def test_integer_scaling_wraps(self):
        p = PolynomialPhase((frac_from_ratio(1, 4),))
        assert scale_phase_int(p, 2).coeffs == (HALF,)
        assert scale_phase_int(p, -1).coeffs == (frac_from_ratio(3, 4),)
        assert scale_phase_int(p, 0).coeffs == (0,)


class TestTrig:
    def test_constant_term(self):
        phi = TrigPolynomial.from_pairs([(0, 1.0)])
        assert trig_eval(phi, CirclePoint.parse("sqrt2")) == 1 + 0j

    def test_single_frequency_at_half(self):
        phi = TrigPolynomial.from_pairs([(1, 1.0)])
        assert abs(trig_eval(phi, CirclePoint.from_ratio(1, 2)) + 1.0) < 1e-15

    def test_cosine_pair(self):
        phi = TrigPolynomial.from_pairs([(1, 1.0), (-1, 1.0)])
        got = trig_eval(phi, CirclePoint.from_ratio(1, 8))
        assert abs(got - math.sqrt(2)) < 1e-14


class TestSerialization:
    def test_phase_round_trip(self):
        p = PolynomialPhase((0, frac_from_ratio(1, 4), MASK))
        blob = p.to_json_dict()
        assert blob["degree"] == 3
        assert PolynomialPhase.from_json_dict(blob) == p
        with pytest.raises(InputError):
            PolynomialPhase.from_json_dict({"degree": 2, "coeffs": blob["coeffs"]})

    def test_trig_round_trip(self):
        phi = TrigPolynomial.from_pairs([(2, 0.5 + 0.25j), (-1, 1.0)])
        assert TrigPolynomial.from_json_list(phi.to_json_list()) == phi

    def test_parse(self):
        assert PolynomialPhase.parse("") == PolynomialPhase.zero()
        p = PolynomialPhase.parse("1/4,golden")
        assert p.degree == 2
        assert p.coeffs[0] == frac_from_ratio(1, 4)
