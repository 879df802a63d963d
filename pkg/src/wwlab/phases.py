"""Polynomial phases p(n) = c_1 n + ... + c_k n^k mod 1 and trigonometric sums.

Coefficients are 64-bit fixed-point fractions; the constant term is omitted
because it only contributes a fixed unimodular factor, which no modulus or
supremum can see.  Evaluation is exact: the whole Horner recursion runs on
wrapping uint64 numerators, so there is no floating-point drift in the phase
even at n of order 2**20 (the complex exponential is taken once at the end).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .backend import K
from .errors import InputError
from .fixedpoint import (
    MASK,
    CirclePoint,
    frac_from_hex,
    frac_from_ratio,
    frac_mul_round,
    frac_to_hex,
    parse_frac,
)

_U64 = np.uint64
_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PolynomialPhase:
    """Coefficients c_1..c_k as fixed-point numerators; degree = len(coeffs).

    Trailing zero coefficients are legal and count toward the degree used for
    family membership.  The empty tuple is the (constant) zero phase.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(c & MASK for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, degree: int = 1) -> "PolynomialPhase":
        return cls((0,) * degree)

    @classmethod
    def from_fracs(cls, fracs: Iterable[int]) -> "PolynomialPhase":
        return cls(tuple(fracs))

    @classmethod
    def from_floats(cls, values: Iterable[float]) -> "PolynomialPhase":
        return cls(tuple(parse_frac(float(v)) for v in values))

    @classmethod
    def parse(cls, text: str) -> "PolynomialPhase":
        """Comma-separated coefficients c_1,c_2,...; empty means zero phase."""
        s = text.strip()
        if not s:
            return cls.zero()
        return cls(tuple(parse_frac(tok) for tok in s.split(",")))

    def to_json_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": [frac_to_hex(c) for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "PolynomialPhase":
        p = cls(tuple(frac_from_hex(c) for c in data["coeffs"]))
        if p.degree != data.get("degree", p.degree):
            raise InputError("degree field does not match coefficient count")
        return p

    def label(self) -> str:
        return ",".join(frac_to_hex(c) for c in self.coeffs)


def phase_frac(p: PolynomialPhase, n: int) -> int:
    """Exact numerator of p(n) mod 1 (scalar path)."""
    if not p.coeffs:
        return 0
    acc = p.coeffs[-1]
    for c in p.coeffs[-2::-1]:
        acc = (acc * n + c) & MASK
    return (acc * n) & MASK


def phase_fracs(p: PolynomialPhase, n: np.ndarray) -> np.ndarray:
    """Exact numerators of p(n) mod 1 over an array of n."""
    return K.poly_eval_fracs(p.coeffs, np.asarray(n, dtype=_U64))


def fracs_to_complex(fracs: np.ndarray) -> np.ndarray:
    return np.exp(1j * _TWO_PI * (np.asarray(fracs, dtype=_U64) / float(1 << 64)))


def phase_value(p: PolynomialPhase, n: int) -> complex:
    """e(p(n)), unit modulus up to rounding of the single exponential."""
    if n < 0:
        raise InputError("n must be >= 0")
    f = phase_frac(p, n)
    return complex(np.exp(1j * _TWO_PI * (f / float(1 << 64))))


def phase_values(p: PolynomialPhase, n: np.ndarray) -> np.ndarray:
    return fracs_to_complex(phase_fracs(p, n))


def add_phases(p: PolynomialPhase, q: PolynomialPhase) -> PolynomialPhase:
    k = max(p.degree, q.degree)
    a = p.coeffs + (0,) * (k - p.degree)
    b = q.coeffs + (0,) * (k - q.degree)
    return PolynomialPhase(tuple((x + y) & MASK for x, y in zip(a, b)))


def scale_phase_int(p: PolynomialPhase, m: int) -> PolynomialPhase:
    """Coefficient-wise scaling by an integer (exact mod 1)."""
    return PolynomialPhase(tuple((c * m) & MASK for c in p.coeffs))


Scalar = Union[int, float, Fraction, CirclePoint]


def scale_phase(p: PolynomialPhase, t: Scalar) -> PolynomialPhase:
    """Coefficient-wise scaling by a real scalar t.

    t is split into integer and fractional parts; the integer part scales
    exactly and the fractional part goes through one rounded 128-bit product
    per coefficient, so each output coefficient is within 2**-64 of t*c_j.
    """
    if isinstance(t, CirclePoint):
        whole, part = 0, t.frac
    elif isinstance(t, int):
        whole, part = t, 0
    else:
        q = t if isinstance(t, Fraction) else Fraction(float(t))
        whole = q.numerator // q.denominator
        rem = q - whole
        part = frac_from_ratio(rem.numerator, rem.denominator)
    out = []
    for c in p.coeffs:
        out.append((c * whole + frac_mul_round(c, part)) & MASK)
    return PolynomialPhase(tuple(out))


@dataclass(frozen=True)
class TrigPolynomial:
    """Finite trigonometric sum phi(alpha) = sum_m amp_m e(m alpha)."""

    terms: tuple[tuple[int, complex], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, complex]]) -> "TrigPolynomial":
        return cls(tuple((int(m), complex(a)) for m, a in pairs))

    def to_json_list(self) -> list:
        return [{"m": m, "re": a.real, "im": a.imag} for m, a in self.terms]

    @classmethod
    def from_json_list(cls, data: list) -> "TrigPolynomial":
        return cls(tuple((int(d["m"]), complex(d["re"], d["im"])) for d in data))


def trig_eval(phi: TrigPolynomial, alpha: CirclePoint | int) -> complex:
    """phi evaluated at a circle point (frequencies applied exactly mod 1)."""
    frac = alpha.frac if isinstance(alpha, CirclePoint) else (alpha & MASK)
    total = 0j
    for m, amp in phi.terms:
        f = (frac * m) & MASK
        total += amp * complex(np.exp(1j * _TWO_PI * (f / float(1 << 64))))
    return total
