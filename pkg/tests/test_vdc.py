import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wwlab.averages import weight_sequence
from wwlab.errors import InputError
from wwlab.fixedpoint import HALF, MASK, CirclePoint, frac_from_ratio
from wwlab.observables import catalog_lookup
from wwlab.phases import PolynomialPhase, phase_frac, phase_value
from wwlab.systems import SystemSpec, sample_initial_points
from wwlab.vdc import difference_phase, h_difference, vdc_bound

GOLDEN = CirclePoint.parse("golden")
ROT = SystemSpec.rotation(GOLDEN)


class TestVdcBound:
    def test_ones_window_zero(self):
        r = vdc_bound(np.ones(4, dtype=complex), 0)
        assert abs(r.lhs - 1.0) < 1e-12
        assert abs(r.rhs - 1.0) < 1e-12
        assert abs(r.slack) < 1e-12

    def test_zeros(self):
        r = vdc_bound(np.zeros(16, dtype=complex), 5)
        assert r.lhs == 0.0 and r.rhs == 0.0 and r.slack == 0.0

    def test_alternating_hand_value(self):
        # a_n = e(n/2): lhs 0; rhs = (5/32)*4 + (10/64)*Re(-3) = 5/32
        a = np.array([1, -1, 1, -1], dtype=complex)
        r = vdc_bound(a, 1)
        assert abs(r.lhs) < 1e-12
        assert abs(r.rhs - 5 / 32) < 1e-12
        assert abs(r.slack - 5 / 32) < 1e-12

    def test_tight_for_constants_at_window_zero(self):
        for c in (1.0 + 0j, 1.0 + 1.0j, -2.0j):
            for n in (4, 16):
                r = vdc_bound(np.full(n, c), 0)
                assert r.slack == 0.0

    @given(
        st.integers(8, 128),
        st.data(),
    )
    @settings(max_examples=60)
    def test_inequality_random_disk(self, n, data):
        h = data.draw(st.integers(0, n - 1))
        seed = data.draw(st.integers(0, 2**31))
        rng = np.random.default_rng(seed)
        a = np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
        assert vdc_bound(a, h).slack >= -1e-9

    def test_validation(self):
        with pytest.raises(InputError):
            vdc_bound(np.ones(4, dtype=complex), 4)
        with pytest.raises(InputError):
            vdc_bound(np.ones(0, dtype=complex), 0)
        with pytest.raises(InputError):
            vdc_bound(np.ones(4, dtype=complex), -1)


class TestHDifference:
    def test_constant_weights(self):
        const = catalog_lookup("const_one")
        x = sample_initial_points(ROT, 1, 1)[0]
        w = weight_sequence(ROT, x, const, const, 1, 2, 32)
        d = h_difference(w, 3)
        assert d.n_max == 29
        assert np.array_equal(d.values, np.ones(29, dtype=complex))

    def test_rotation_closed_form(self):
        # u_n = e(-n*alpha)  =>  differenced weights are identically e(h*alpha)
        x = sample_initial_points(ROT, 1, 6)[0]
        w = weight_sequence(
            ROT, x, catalog_lookup("character_x(1)"), catalog_lookup("character_x(-1)"), 1, 2, 64
        )
        h = 5
        d = h_difference(w, h)
        expected = np.full(64 - h, (h * GOLDEN.frac) & MASK, dtype=np.uint64)
        assert np.array_equal(d.fracs, expected)

    def test_matches_direct_recomputation(self):
        rng = np.random.default_rng(17)
        vals = np.exp(2j * np.pi * rng.random(48))
        from wwlab.averages import WeightSequence

        w = WeightSequence("s", "f1", "f2", 1, 2, 48, _values=vals)
        d = h_difference(w, 7)
        assert np.array_equal(d.values, vals[:41] * np.conj(vals[7:]))

    def test_double_difference_commutes(self):
        x = sample_initial_points(ROT, 1, 2)[0]
        w = weight_sequence(
            ROT, x, catalog_lookup("character_x(2)"), catalog_lookup("character_x(-1)"), 1, 3, 64
        )
        d12 = h_difference(h_difference(w, 4), 9)
        d21 = h_difference(h_difference(w, 9), 4)
        assert np.array_equal(d12.fracs, d21.fracs)
        # float path too
        from wwlab.averages import WeightSequence

        rng = np.random.default_rng(3)
        vals = np.exp(2j * np.pi * rng.random(64))
        wf = WeightSequence("s", "f1", "f2", 1, 2, 64, _values=vals)
        f12 = h_difference(h_difference(wf, 4), 9)
        f21 = h_difference(h_difference(wf, 9), 4)
        assert np.max(np.abs(f12.values - f21.values)) < 1e-14

    def test_window_validation(self):
        const = catalog_lookup("const_one")
        x = sample_initial_points(ROT, 1, 1)[0]
        w = weight_sequence(ROT, x, const, const, 1, 2, 32)
        with pytest.raises(InputError):
            h_difference(w, 17)
        with pytest.raises(InputError):
            h_difference(w, 0)


class TestDifferencePhase:
    def test_quadratic_quarter_step_one(self):
        p = PolynomialPhase((0, frac_from_ratio(1, 4)))
        q = difference_phase(p, 1)
        assert q.coeffs == (HALF,)  # (1/4)((n+1)^2 - n^2) has slope 1/2

    def test_linear_becomes_constant(self):
        p = PolynomialPhase((frac_from_ratio(3, 7),))
        q = difference_phase(p, 11)
        assert q.coeffs == ()
        assert q.degree == 0

    def test_degree_drops_by_one_when_leading_nonzero(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            k = int(rng.integers(2, 5))
            coeffs = tuple(int(c) for c in rng.integers(1, 2**64, k, dtype=np.uint64))
            h = int(rng.integers(1, 50))
            q = difference_phase(PolynomialPhase(coeffs), h)
            assert q.degree == k - 1
            if (coeffs[-1] * k * h) % (1 << 64) != 0:
                assert q.coeffs[-1] != 0

    def test_shift_identity_on_random_inputs(self):
        # e(p(n+h)) conj(e(p(n))) = e(p(h)) e(q_h(n)); the constant e(p(h))
        # is exactly the dropped degree-0 term
        rng = np.random.default_rng(13)
        for _ in range(100):
            k = int(rng.integers(1, 5))
            coeffs = tuple(int(c) for c in rng.integers(0, 2**64, k, dtype=np.uint64))
            p = PolynomialPhase(coeffs)
            h = int(rng.integers(1, 64))
            n = int(rng.integers(0, 1 << 20))
            q = difference_phase(p, h)
            lhs = phase_value(p, n + h) * np.conj(phase_value(p, n))
            rhs = phase_value(p, h) * phase_value(q, n)
            assert abs(lhs - rhs) < 1e-13
            # and the underlying numerators agree exactly
            assert (phase_frac(p, n + h) - phase_frac(p, n)) % (1 << 64) == (
                phase_frac(p, h) + phase_frac(q, n)
            ) % (1 << 64)
