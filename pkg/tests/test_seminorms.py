import numpy as np
import pytest

from wwlab.errors import InputError, UnsupportedError
from wwlab.fixedpoint import CirclePoint
from wwlab.observables import catalog_lookup, conjugate, evaluate_along, scaled
from wwlab.seminorms import ghk_estimate, seminorm_ladder, uk_norm
from wwlab.systems import StatePoint, SystemSpec, orbit, sample_initial_points

GOLDEN = CirclePoint.parse("golden")
ROT = SystemSpec.rotation(GOLDEN)
ANZ = SystemSpec.anzai(GOLDEN)
BERN = SystemSpec.bernoulli()
CONST = catalog_lookup("const_one")
CHAR_X = catalog_lookup("character_x(1)")
RAD = catalog_lookup("rademacher_bit")


def _point(system, seed=0):
    return sample_initial_points(system, 1, seed)[0]


class TestGhkEstimate:
    def test_constant_is_one_exactly(self):
        x = _point(ROT)
        for k in (1, 2, 3, 4):
            assert ghk_estimate(ROT, x, CONST, k, 256, 16).value == 1.0

    def test_rotation_character_degree_two(self):
        # differenced sequences are the constants e(h*alpha), so the estimate
        # telescopes to 1
        est = ghk_estimate(ROT, _point(ROT, 3), CHAR_X, 2, 1 << 12, 1 << 6)
        assert abs(est.value - 1.0) <= 0.02

    def test_bernoulli_rademacher_small(self):
        vals = [
            ghk_estimate(BERN, _point(BERN, s), RAD, 2, 1 << 14, 1 << 7).value
            for s in range(5)
        ]
        assert float(np.median(vals)) <= 0.15

    def test_scaling_homogeneity(self):
        x = _point(ROT, 9)
        for k in (2, 3):
            base = ghk_estimate(ROT, x, CHAR_X, k, 1 << 10, 1 << 4).value
            half = ghk_estimate(ROT, x, scaled(0.5, CHAR_X), k, 1 << 10, 1 << 4).value
            assert abs(half - 0.5 * base) < 1e-10

    def test_conjugation_symmetry(self):
        x = _point(ANZ, 4)
        f = catalog_lookup("character_y(1)")
        for k in (1, 2, 3):
            a = ghk_estimate(ANZ, x, f, k, 1 << 10, 1 << 4).value
            b = ghk_estimate(ANZ, x, conjugate(f), k, 1 << 10, 1 << 4).value
            assert abs(a - b) < 1e-12

    def test_validation(self):
        x = _point(ROT)
        with pytest.raises(InputError):
            ghk_estimate(ROT, x, CONST, 2, 64, 40)  # H > N/2
        with pytest.raises(UnsupportedError):
            ghk_estimate(ROT, x, CONST, 5, 256, 16)
        with pytest.raises(InputError):
            ghk_estimate(ROT, x, CONST, 0, 256, 16)
        with pytest.raises(InputError):
            ghk_estimate(ROT, x, CONST, 4, 64, 32)  # (k-1)*H >= N


class TestLadder:
    def test_constant_ladder(self):
        lads = seminorm_ladder(ROT, _point(ROT), CONST, 4, 256, 16)
        assert [e.value for e in lads] == [1.0, 1.0, 1.0, 1.0]
        assert [e.k for e in lads] == [1, 2, 3, 4]

    def test_skew_character_separates_degrees(self):
        # e(y) on the skew product: second differences are constants, so the
        # degree-3 estimate saturates while degree-2 stays small
        lads = seminorm_ladder(ANZ, _point(ANZ, 8), catalog_lookup("character_y(1)"), 3, 1 << 14, 1 << 7)
        v = [e.value for e in lads]
        assert v[1] <= 0.2
        assert v[2] >= 0.8

    def test_ladder_monotone_up_to_tolerance(self):
        tol = 0.05
        cases = [
            (ROT, CHAR_X, 6),
            (ANZ, catalog_lookup("character_y(1)"), 7),
            (BERN, RAD, 8),
        ]
        for system, f, seed in cases:
            lads = seminorm_ladder(system, _point(system, seed), f, 3, 1 << 12, 1 << 5)
            v = [e.value for e in lads]
            assert all(v[i] <= v[i + 1] + tol for i in range(len(v) - 1)), (system.kind, v)

    def test_bernoulli_median_decreases_with_n(self):
        medians = []
        for n in (1 << 10, 1 << 12, 1 << 14):
            vals = [
                ghk_estimate(BERN, _point(BERN, s), RAD, 2, n, max(4, int(np.sqrt(n)) // 2)).value
                for s in range(9)
            ]
            medians.append(float(np.median(vals)))
        assert medians[0] >= medians[1] >= medians[2]

    def test_json_record(self):
        est = ghk_estimate(ROT, _point(ROT), CHAR_X, 2, 256, 16)
        rec = est.to_json_dict()
        assert set(rec) == {"system", "observable", "k", "N", "H", "value"}


class TestUkNorm:
    def test_ones_exact(self):
        for k, n in ((2, 100), (2, 128), (3, 32)):
            assert uk_norm(np.ones(n, dtype=complex), k).value == 1.0

    def test_character_is_extremal(self):
        n = 256
        f = np.exp(2j * np.pi * 5 * np.arange(n) / n)
        assert abs(uk_norm(f, 2).value - 1.0) < 1e-12
        small = np.exp(2j * np.pi * 3 * np.arange(32) / 32)
        assert abs(uk_norm(small, 3).value - 1.0) < 1e-12

    def test_degree_two_fourier_identity(self):
        # U_2 equals the l4 norm of the normalised Fourier transform
        rng = np.random.default_rng(10)
        n = 256
        f = rng.choice([-1.0, 1.0], n).astype(complex)
        fhat = np.fft.fft(f) / n
        oracle = float(np.sum(np.abs(fhat) ** 4) ** 0.25)
        assert abs(uk_norm(f, 2).value - oracle) < 1e-9

    def test_caps_and_validation(self):
        with pytest.raises(InputError):
            uk_norm(np.ones(8, dtype=complex), 4)
        with pytest.raises(InputError):
            uk_norm(np.ones((1 << 14) + 1, dtype=complex), 2)
        with pytest.raises(InputError):
            uk_norm(np.ones((1 << 12) + 1, dtype=complex), 3)
        with pytest.raises(InputError):
            uk_norm(np.ones(0, dtype=complex), 2)


class TestOracleConsistency:
    def test_periodic_rotation_matches_group_norm(self):
        # exact period Q: run the orbit estimator over two periods with
        # H = Q, and the group norm over a single period
        q = 32
        system = SystemSpec.rotation(CirclePoint.from_ratio(1, q))
        x = _point(system, 3)
        for name in ("character_x(1)", "mix(0.6,character_x(1),const_one)"):
            f = catalog_lookup(name)
            est = ghk_estimate(system, x, f, 2, 2 * q, q)
            seq = evaluate_along(orbit(system, x, 1, q), f)
            group = uk_norm(seq, 2)
            assert abs(est.value - group.value) <= 0.05, name
