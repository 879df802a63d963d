"""Exact 64-bit fixed-point arithmetic on the circle R/Z.

A point x in [0, 1) is stored as an unsigned 64-bit numerator ``frac`` with
x = frac / 2**64.  Group addition mod 1 is plain wraparound addition of the
64-bit word, so it is exact and exactly invertible; no drift accumulates over
long orbits.  Irrational inputs are rounded once, to the nearest multiple of
2**-64, when they are encoded.

Scalar helpers here work on plain Python ints (arbitrary precision, then
masked).  Bulk array versions of the same operations live in the kernel
backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

BITS = 64
SCALE = 1 << BITS
MASK = SCALE - 1
HALF = 1 << (BITS - 1)


def frac_from_float(x: float) -> int:
    """Nearest 2**-64 multiple of x mod 1.

    Goes through the float's exact rational value, so the reduction mod 1
    cannot lose precision near the wrap.
    """
    if not math.isfinite(x):
        raise ValueError(f"cannot encode non-finite value {x!r}")
    q = Fraction(x)
    return frac_from_ratio(q.numerator, q.denominator)


def frac_from_ratio(num: int, den: int) -> int:
    """Nearest 2**-64 multiple of num/den mod 1, computed exactly."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    r = num % den
    # round half up: floor((r/den)*2^64 + 1/2)
    return ((r << (BITS + 1)) + den) // (2 * den) & MASK


def frac_sqrt_ratio(num: int, den: int) -> int:
    """Nearest 2**-64 multiple of sqrt(num/den) mod 1, computed exactly."""
    if num < 0 or den <= 0:
        raise ValueError("need num >= 0 and den > 0")
    r = math.isqrt((num << (2 * BITS)) // den)
    # isqrt floors; nudge up across the half-cell boundary (2r+1)/2^65
    while (2 * r + 1) ** 2 * den <= num << (2 * BITS + 2):
        r += 1
    return r & MASK


def frac_to_float(frac: int) -> float:
    return (frac & MASK) / SCALE


def frac_to_fraction(frac: int) -> Fraction:
    return Fraction(frac & MASK, SCALE)


def frac_add(a: int, b: int) -> int:
    return (a + b) & MASK


def frac_neg(a: int) -> int:
    return (-a) & MASK


def frac_sub(a: int, b: int) -> int:
    return (a - b) & MASK


def frac_scale_int(frac: int, m: int) -> int:
    """frac * m mod 1 for an integer m (m may be negative)."""
    return (frac * m) & MASK


def frac_mul_round(a: int, b: int) -> int:
    """Product of two fractions, rounded to the nearest 2**-64 (ties up).

    The full 128-bit product is formed before rounding, so the single-step
    rounding error is at most 2**-65.
    """
    return (((a & MASK) * (b & MASK) + HALF) >> BITS) & MASK


def frac_to_hex(frac: int) -> str:
    return f"0x{frac & MASK:016x}"


def frac_from_hex(text: str) -> int:
    value = int(text, 16)
    if not 0 <= value < SCALE:
        raise ValueError(f"hex fraction out of range: {text!r}")
    return value


# Frequently used irrational angles, encoded once to the nearest 2**-64.
NAMED_FRACTIONS = {
    "golden": frac_sub(frac_sqrt_ratio(5, 4), HALF),  # (sqrt(5)-1)/2
    "sqrt2": frac_sqrt_ratio(2, 1),                   # sqrt(2) mod 1
    "sqrt3": frac_sqrt_ratio(3, 1),                   # sqrt(3) mod 1
    "sqrt5": frac_sqrt_ratio(5, 1),                   # sqrt(5) mod 1
}


def parse_frac(text: str | float | int) -> int:
    """Parse a circle point from user input.

    Accepts a named irrational ("golden", "sqrt2", ...), a rational "p/q",
    a hex numerator "0x...", or a decimal literal.  Floats and ints are
    taken mod 1.
    """
    if isinstance(text, int):
        return frac_from_ratio(text, 1)
    if isinstance(text, float):
        return frac_from_float(text)
    s = text.strip().lower()
    if s in NAMED_FRACTIONS:
        return NAMED_FRACTIONS[s]
    if s.startswith("0x"):
        return frac_from_hex(s)
    if "/" in s:
        num, den = s.split("/", 1)
        return frac_from_ratio(int(num), int(den))
    return frac_from_float(float(s))


@dataclass(frozen=True)
class CirclePoint:
    """A point of the circle stored as a 64-bit fixed-point fraction."""

    frac: int

    def __post_init__(self) -> None:
        if not 0 <= self.frac < SCALE:
            object.__setattr__(self, "frac", self.frac & MASK)

    @classmethod
    def from_float(cls, x: float) -> "CirclePoint":
        return cls(frac_from_float(x))

    @classmethod
    def from_ratio(cls, num: int, den: int) -> "CirclePoint":
        return cls(frac_from_ratio(num, den))

    @classmethod
    def parse(cls, text: str | float | int) -> "CirclePoint":
        return cls(parse_frac(text))

    def __add__(self, other: "CirclePoint") -> "CirclePoint":
        return CirclePoint(frac_add(self.frac, other.frac))

    def __sub__(self, other: "CirclePoint") -> "CirclePoint":
        return CirclePoint(frac_sub(self.frac, other.frac))

    def __neg__(self) -> "CirclePoint":
        return CirclePoint(frac_neg(self.frac))

    def times_int(self, m: int) -> "CirclePoint":
        return CirclePoint(frac_scale_int(self.frac, m))

    def to_float(self) -> float:
        return frac_to_float(self.frac)

    def to_hex(self) -> str:
        return frac_to_hex(self.frac)


ZERO = CirclePoint(0)
