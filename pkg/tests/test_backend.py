"""Backend equivalence: both kernel implementations against slow oracles."""

import os
import subprocess
import sys

import numpy as np
import pytest

from wwlab.backend import available_backends
from wwlab.fixedpoint import MASK

BACKENDS = available_backends()


@pytest.fixture(params=sorted(BACKENDS), ids=sorted(BACKENDS))
def kern(request):
    return BACKENDS[request.param]


def _horner_int(coeffs, n):
    if not coeffs:
        return 0
    acc = coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = (acc * n + c) & MASK
    return (acc * n) & MASK


def test_poly_eval_matches_bigint_horner(kern):
    rng = np.random.default_rng(1)
    for deg in (1, 2, 3, 5):
        coeffs = [int(c) for c in rng.integers(0, 2**64, deg, dtype=np.uint64)]
        n = rng.integers(0, 2**40, 200, dtype=np.uint64)
        got = kern.poly_eval_fracs(coeffs, n)
        expected = np.array([_horner_int(coeffs, int(v)) for v in n], dtype=np.uint64)
        assert np.array_equal(got, expected)


def test_mul_round_matches_bigint(kern):
    rng = np.random.default_rng(2)
    a = rng.integers(0, 2**64, 400, dtype=np.uint64)
    b = rng.integers(0, 2**64, 400, dtype=np.uint64)
    got = kern.mul_round(a, b)
    expected = np.array(
        [((int(x) * int(y) + (1 << 63)) >> 64) & MASK for x, y in zip(a, b)],
        dtype=np.uint64,
    )
    assert np.array_equal(got, expected)


def test_bit_stream_deterministic_and_balanced(kern):
    idx = np.arange(100_000, dtype=np.uint64)
    bits = kern.bit_stream(7, idx)
    again = kern.bit_stream(7, idx)
    assert np.array_equal(bits, again)
    assert abs(float(bits.mean()) - 0.5) < 0.01
    other = kern.bit_stream(8, idx)
    assert not np.array_equal(bits, other)


def test_shifted_corr_matches_naive(kern):
    rng = np.random.default_rng(3)
    a = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    got = kern.shifted_corr(a, 40)
    for h in range(1, 41):
        expected = sum(a[n] * np.conj(a[n + h]) for n in range(64 - h))
        assert abs(got[h - 1] - expected) < 1e-10


def test_uk2_matches_definition(kern):
    rng = np.random.default_rng(4)
    n = 16
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    total = 0j
    for x in range(n):
        for h1 in range(n):
            for h2 in range(n):
                total += (
                    f[x]
                    * np.conj(f[(x + h1) % n])
                    * np.conj(f[(x + h2) % n])
                    * f[(x + h1 + h2) % n]
                )
    expected = (total / n**3).real
    assert abs(kern.uk2_pow4(f) - expected) < 1e-10


def test_uk3_matches_definition(kern):
    rng = np.random.default_rng(5)
    n = 8
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    total = 0j
    for x in range(n):
        for h1 in range(n):
            for h2 in range(n):
                for h3 in range(n):
                    prod = 1.0 + 0j
                    for eps in range(8):
                        idx = (
                            x
                            + (eps & 1) * h1
                            + ((eps >> 1) & 1) * h2
                            + ((eps >> 2) & 1) * h3
                        ) % n
                        v = f[idx]
                        if bin(eps).count("1") % 2:
                            v = np.conj(v)
                        prod *= v
                    total += prod
    expected = (total / n**4).real
    assert abs(kern.uk3_pow8(f) - expected) < 1e-10


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
def test_backends_agree_on_floats():
    kp = BACKENDS["python"]
    kc = BACKENDS["compiled"]
    rng = np.random.default_rng(6)
    a = np.exp(2j * np.pi * rng.random(512))
    assert np.allclose(kp.shifted_corr(a, 200), kc.shifted_corr(a, 200), rtol=1e-12, atol=1e-9)
    f = rng.choice([-1.0, 1.0], 96).astype(complex)
    assert abs(kp.uk2_pow4(f) - kc.uk2_pow4(f)) < 1e-12
    assert abs(kp.uk3_pow8(f) - kc.uk3_pow8(f)) < 1e-12
    idx = np.arange(1000, dtype=np.uint64)
    assert np.array_equal(kp.mix64(99, idx), kc.mix64(99, idx))


def test_env_forces_python_backend():
    env = dict(os.environ, WWLAB_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "from wwlab.backend import K; print(K.NAME)"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.stdout.strip() == "python"
