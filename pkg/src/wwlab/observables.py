"""Catalog of test observables with analytically known structure.

Every observable is stored in a normal form: a finite sum of monomials
``amp * e(m_x*x + m_y*y + m_z*z) * (-1)^(rad*bit)``.  Products, mixtures and
conjugates stay inside this class, and the mean under the invariant measure
(independent uniform coordinates, unbiased bits) is read off exactly: a
monomial integrates to ``amp`` when all exponents vanish and the bit parity
is even, and to zero otherwise.

Factor placement of catalog entries is asserted analytically, not computed:

* mean-zero observables on the Bernoulli shift sit in the orthocomplement of
  every structured factor (the shift is weakly mixing);
* a nonzero character in x on a rotation generates the Kronecker part;
* a nonzero character in y on the skew product lies in the two-step factor
  but outside the Kronecker one (its first differences are x-characters);
* a nonzero character in z on the Heisenberg system lies in the two-step
  factor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import CatalogError, InputError
from .fixedpoint import HALF
from .systems import BERNOULLI, OrbitTable

_U64 = np.uint64
_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Monomial:
    amp: complex
    ex: tuple[int, int, int]
    rad: int  # bit parity, 0 or 1


@dataclass(frozen=True)
class Observable:
    """A named function of system states, bounded by ``sup_bound``."""

    name: str
    terms: tuple[Monomial, ...]

    @property
    def mean(self) -> complex:
        return sum(
            (t.amp for t in self.terms if t.ex == (0, 0, 0) and t.rad == 0),
            start=0j,
        )

    @property
    def sup_bound(self) -> float:
        return float(sum(abs(t.amp) for t in self.terms))

    @property
    def torus_arity(self) -> int:
        """Number of leading torus coordinates the observable reads."""
        arity = 0
        for t in self.terms:
            for c in range(3):
                if t.ex[c] != 0:
                    arity = max(arity, c + 1)
        return arity

    @property
    def uses_bits(self) -> bool:
        return any(t.rad for t in self.terms)


def _combine(terms) -> tuple[Monomial, ...]:
    acc: dict[tuple[tuple[int, int, int], int], complex] = {}
    for t in terms:
        key = (t.ex, t.rad)
        acc[key] = acc.get(key, 0j) + t.amp
    kept = [Monomial(a, ex, rad) for (ex, rad), a in acc.items() if a != 0]
    kept.sort(key=lambda t: (t.ex, t.rad))
    return tuple(kept)


def product(a: Observable, b: Observable, name: str = "") -> Observable:
    terms = []
    for s in a.terms:
        for t in b.terms:
            ex = tuple(s.ex[i] + t.ex[i] for i in range(3))
            terms.append(Monomial(s.amp * t.amp, ex, (s.rad + t.rad) % 2))
    return Observable(name or f"product({a.name},{b.name})", _combine(terms))


def mix(weight: float, a: Observable, b: Observable, name: str = "") -> Observable:
    if not 0.0 <= weight <= 1.0:
        raise InputError("mixture weight must lie in [0, 1]")
    terms = [Monomial(weight * t.amp, t.ex, t.rad) for t in a.terms]
    terms += [Monomial((1.0 - weight) * t.amp, t.ex, t.rad) for t in b.terms]
    return Observable(name or f"mix({weight!r},{a.name},{b.name})", _combine(terms))


def conjugate(a: Observable) -> Observable:
    terms = [
        Monomial(t.amp.conjugate(), tuple(-e for e in t.ex), t.rad) for t in a.terms
    ]
    return Observable(f"conj({a.name})", _combine(terms))


def scaled(lam: complex, a: Observable) -> Observable:
    terms = [Monomial(lam * t.amp, t.ex, t.rad) for t in a.terms]
    return Observable(f"scale({lam!r},{a.name})", _combine(terms))


CONST_ONE = Observable("const_one", (Monomial(1.0 + 0j, (0, 0, 0), 0),))
RADEMACHER = Observable("rademacher_bit", (Monomial(1.0 + 0j, (0, 0, 0), 1),))


def character(coord: int, m: int) -> Observable:
    axis = "xyz"[coord]
    ex = tuple(m if c == coord else 0 for c in range(3))
    return Observable(f"character_{axis}({m})", (Monomial(1.0 + 0j, ex, 0),))


_CHAR_RE = re.compile(r"^character_([xyz])\((-?\d+)\)$")


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def catalog_lookup(name: str) -> Observable:
    """Resolve an observable name from the catalog grammar.

    Grammar: ``const_one``, ``rademacher_bit``, ``character_x(m)`` (and
    ``_y``, ``_z``), ``product(A,B)``, ``mix(w,A,B)``.
    """
    s = name.strip()
    if s == "const_one":
        return CONST_ONE
    if s == "rademacher_bit":
        return RADEMACHER
    m = _CHAR_RE.match(s)
    if m:
        return character("xyz".index(m.group(1)), int(m.group(2)))
    if s.startswith("product(") and s.endswith(")"):
        args = _split_args(s[len("product(") : -1])
        if len(args) != 2:
            raise CatalogError(name)
        return product(catalog_lookup(args[0]), catalog_lookup(args[1]), name=s)
    if s.startswith("mix(") and s.endswith(")"):
        args = _split_args(s[len("mix(") : -1])
        if len(args) != 3:
            raise CatalogError(name)
        return mix(float(args[0]), catalog_lookup(args[1]), catalog_lookup(args[2]), name=s)
    raise CatalogError(name)


def _check_arity(table: OrbitTable, f: Observable) -> None:
    if f.uses_bits and table.bits is None:
        raise InputError(f"{f.name} reads bits; system {table.system.kind} has none")
    if f.torus_arity > 0:
        if table.coords is None or f.torus_arity > len(table.coords):
            raise InputError(
                f"{f.name} reads {f.torus_arity} torus coordinate(s); "
                f"system {table.system.kind} has {0 if table.coords is None else len(table.coords)}"
            )


def _term_fracs(table: OrbitTable, t: Monomial, length: int) -> np.ndarray:
    fr = np.zeros(length, dtype=_U64)
    for c in range(3):
        if t.ex[c] != 0:
            fr = fr + table.coords[c] * _U64(t.ex[c] % (1 << 64))
    if t.rad:
        fr = fr + table.bits.astype(_U64) * _U64(HALF)
    return fr


def evaluate_along(table: OrbitTable, f: Observable) -> np.ndarray:
    """Pointwise values f(states[i]) along an orbit."""
    _check_arity(table, f)
    n = len(table)
    out = np.zeros(n, dtype=np.complex128)
    for t in f.terms:
        if t.ex == (0, 0, 0) and not t.rad:
            out += t.amp
            continue
        fr = _term_fracs(table, t, n)
        out += t.amp * np.exp(1j * _TWO_PI * (fr / float(1 << 64)))
    return out


def phase_fracs_along(table: OrbitTable, f: Observable):
    """Exact phase numerators when f is a single unimodular monomial.

    Returns a uint64 array with f(states[i]) = e(fracs[i]), or None when the
    observable has no exact phase form (mixtures, non-unit amplitudes).
    """
    _check_arity(table, f)
    if len(f.terms) != 1:
        return None
    t = f.terms[0]
    if t.amp == 1:
        shift = 0
    elif t.amp == -1:
        shift = HALF
    else:
        return None
    fr = _term_fracs(table, t, len(table))
    if shift:
        fr = fr + _U64(shift)
    return fr.astype(_U64, copy=False)


def in_structured_complement(f: Observable, kind: str) -> bool:
    """Whether f is flagged orthogonal to every structured factor.

    True exactly for mean-zero observables on the Bernoulli shift: weak
    mixing makes all structured factors trivial there.  Nothing nonzero on
    the torus systems qualifies.
    """
    return kind == BERNOULLI and f.mean == 0


def factor_notes(f: Observable, kind: str) -> str:
    if kind == BERNOULLI:
        if f.mean == 0:
            return "mean zero on a weakly mixing shift: orthogonal to every structured factor"
        return "has a nonzero mean component, so it meets the trivial factor"
    if f.torus_arity <= 1:
        return "depends on the base rotation coordinate only: Kronecker part"
    return "reads skew coordinates: lies in a two-step factor beyond the Kronecker one"
