"""Exact arithmetic for finitely supported signed measures on a lattice.

A measure lives on the scaled integer lattice ``step * Z`` and is stored as
a contiguous block of exact rational coefficients. All operations here are
exact: no floating point enters convolution, restriction, or linear
combination. The atom at 0 belongs to the nonpositive half.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InvalidInputError

__all__ = [
    "LatticeMeasure",
    "convolve",
    "power",
    "restrict_pos",
    "restrict_nonpos",
    "linear_combine",
    "is_nondegenerate",
]


def as_fraction(x) -> Fraction:
    """Coerce to an exact rational.

    Accepts Fraction, int, "p/q" strings (also plain decimal strings), and
    floats. A float is converted to the exact binary rational it denotes.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInputError("boolean is not a measure coefficient")
    if isinstance(x, (int, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse rational scalar {x!r}: {exc}") from exc
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise InvalidInputError(f"non-finite coefficient {x!r}")
        return Fraction(x)
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise InvalidInputError(f"cannot interpret {type(x).__name__} as an exact rational")


@dataclass(frozen=True)
class LatticeMeasure:
    """Finitely supported signed measure on the lattice ``step * Z``.

    ``coeffs[j]`` is the mass at site ``min_index + j``. The stored form is
    canonical: leading and trailing zero coefficients are trimmed, and the
    zero measure is the unique record with empty ``coeffs``. Equality of
    records is equality of measures (zero measures compare equal on any
    lattice).
    """

    step: float = 1.0
    min_index: int = 0
    coeffs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not (self.step > 0):
            raise InvalidInputError(f"lattice step must be positive, got {self.step}")
        coeffs = tuple(as_fraction(c) for c in self.coeffs)
        lo, hi = 0, len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "coeffs", ())
            object.__setattr__(self, "min_index", 0)
        else:
            object.__setattr__(self, "coeffs", coeffs[lo:hi])
            object.__setattr__(self, "min_index", self.min_index + lo)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, step: float = 1.0) -> "LatticeMeasure":
        return cls(step=step)

    @classmethod
    def dirac(cls, site: int = 0, mass=1, step: float = 1.0) -> "LatticeMeasure":
        return cls(step=step, min_index=site, coeffs=(as_fraction(mass),))

    @classmethod
    def from_sites(cls, masses: Mapping[int, object], step: float = 1.0) -> "LatticeMeasure":
        """Build from a site -> mass mapping; missing sites are zero."""
        if not masses:
            return cls.zero(step)
        lo = min(masses)
        hi = max(masses)
        coeffs = [Fraction(0)] * (hi - lo + 1)
        for site, mass in masses.items():
            coeffs[site - lo] += as_fraction(mass)
        return cls(step=step, min_index=lo, coeffs=tuple(coeffs))

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def min_site(self) -> int | None:
        return None if self.is_zero else self.min_index

    @property
    def max_site(self) -> int | None:
        return None if self.is_zero else self.min_index + len(self.coeffs) - 1

    def coeff(self, site: int) -> Fraction:
        """Mass at a lattice site (0 off the stored block)."""
        j = site - self.min_index
        if self.is_zero or j < 0 or j >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[j]

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Iterate (site, mass) over nonzero coefficients."""
        for j, c in enumerate(self.coeffs):
            if c != 0:
                yield self.min_index + j, c

    def total_mass(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def total_variation(self) -> Fraction:
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    def is_probability(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and self.total_mass() == 1

    # -- equality ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeMeasure):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return (
            self.step == other.step
            and self.min_index == other.min_index
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        if self.is_zero:
            return hash(("LatticeMeasure", "zero"))
        return hash(("LatticeMeasure", self.step, self.min_index, self.coeffs))

    # -- arithmetic -------------------------------------------------------

    def _check_compatible(self, other: "LatticeMeasure") -> float:
        # The zero measure is compatible with any lattice.
        if self.is_zero:
            return other.step
        if other.is_zero:
            return self.step
        if self.step != other.step:
            raise InvalidInputError(
                f"mismatched lattice steps: {self.step} vs {other.step}"
            )
        return self.step

    def __add__(self, other: "LatticeMeasure") -> "LatticeMeasure":
        if not isinstance(other, LatticeMeasure):
            return NotImplemented
        step = self._check_compatible(other)
        if self.is_zero:
            return LatticeMeasure(step, other.min_index, other.coeffs)
        if other.is_zero:
            return LatticeMeasure(step, self.min_index, self.coeffs)
        lo = min(self.min_index, other.min_index)
        hi = max(self.max_site, other.max_site)
        coeffs = [Fraction(0)] * (hi - lo + 1)
        for j, c in enumerate(self.coeffs):
            coeffs[self.min_index - lo + j] += c
        for j, c in enumerate(other.coeffs):
            coeffs[other.min_index - lo + j] += c
        return LatticeMeasure(step, lo, tuple(coeffs))

    def __neg__(self) -> "LatticeMeasure":
        return LatticeMeasure(self.step, self.min_index, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LatticeMeasure") -> "LatticeMeasure":
        if not isinstance(other, LatticeMeasure):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> "LatticeMeasure":
        s = as_fraction(scalar)
        if s == 0:
            return LatticeMeasure.zero(self.step)
        return LatticeMeasure(self.step, self.min_index, tuple(s * c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, LatticeMeasure):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "LatticeMeasure":
        return power(self, n)

    def positive_part(self) -> "LatticeMeasure":
        """Restriction to sites with coordinate > 0 (strict)."""
        kept = {s: c for s, c in self.items() if s > 0}
        return LatticeMeasure.from_sites(kept, self.step)

    def nonpositive_part(self) -> "LatticeMeasure":
        """Restriction to sites with coordinate <= 0; the atom at 0 lands here."""
        kept = {s: c for s, c in self.items() if s <= 0}
        return LatticeMeasure.from_sites(kept, self.step)

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        """JSON form; coefficients as "p/q" strings so round trips are exact."""
        return {
            "step": float(self.step),
            "min_index": int(self.min_index),
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "LatticeMeasure":
        if not isinstance(obj, dict):
            raise InvalidInputError("measure JSON must be an object")
        for key in ("step", "min_index", "coeffs"):
            if key not in obj:
                raise InvalidInputError(f"measure JSON missing field {key!r}")
        step = obj["step"]
        if isinstance(step, Fraction):
            step = float(step)
        if not isinstance(step, (int, float)):
            raise InvalidInputError("measure JSON field 'step' must be a number")
        min_index = obj["min_index"]
        if isinstance(min_index, Fraction):
            if min_index.denominator != 1:
                raise InvalidInputError("measure JSON field 'min_index' must be an integer")
            min_index = int(min_index)
        if not isinstance(min_index, int):
            raise InvalidInputError("measure JSON field 'min_index' must be an integer")
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, (list, tuple)):
            raise InvalidInputError("measure JSON field 'coeffs' must be an array")
        try:
            parsed = tuple(as_fraction(c) for c in coeffs)
        except InvalidInputError as exc:
            raise InvalidInputError(f"measure JSON field 'coeffs': {exc}") from exc
        return cls(step=float(step), min_index=min_index, coeffs=parsed)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = [f"{c}@{s}" for s, c in self.items()]
        return " + ".join(terms)


# -- module-level operations ------------------------------------------------


def convolve(a: LatticeMeasure, b: LatticeMeasure) -> LatticeMeasure:
    """Exact convolution: mass at i+j accumulates a_i * b_j."""
    step = a._check_compatible(b)
    if a.is_zero or b.is_zero:
        return LatticeMeasure.zero(step)
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb != 0:
                out[i + j] += ca * cb
    return LatticeMeasure(step, a.min_index + b.min_index, tuple(out))


def power(m: LatticeMeasure, n: int) -> LatticeMeasure:
    """n-fold convolution power; n = 0 gives the unit Dirac mass at 0."""
    if not isinstance(n, int) or n < 0:
        raise InvalidInputError(f"power exponent must be a non-negative integer, got {n!r}")
    if n == 0:
        return LatticeMeasure.dirac(0, 1, m.step)
    if n < 4:
        out = m
        for _ in range(n - 1):
            out = convolve(out, m)
        return out
    # repeated squaring for n >= 4
    result = None
    base = m
    k = n
    while k:
        if k & 1:
            result = base if result is None else convolve(result, base)
        k >>= 1
        if k:
            base = convolve(base, base)
    return result


def restrict_pos(m: LatticeMeasure) -> LatticeMeasure:
    return m.positive_part()


def restrict_nonpos(m: LatticeMeasure) -> LatticeMeasure:
    return m.nonpositive_part()


def linear_combine(terms: Iterable[tuple[object, LatticeMeasure]]) -> LatticeMeasure:
    """Exact signed combination sum(scalar_i * measure_i), trimmed."""
    terms = list(terms)
    step = None
    for _, m in terms:
        if not m.is_zero:
            if step is None:
                step = m.step
            elif m.step != step:
                raise InvalidInputError(
                    f"mismatched lattice steps in linear combination: {step} vs {m.step}"
                )
    if step is None:
        step = terms[0][1].step if terms else 1.0
    acc: dict[int, Fraction] = {}
    for scalar, m in terms:
        s = as_fraction(scalar)
        if s == 0:
            continue
        for site, c in m.items():
            acc[site] = acc.get(site, Fraction(0)) + s * c
    return LatticeMeasure.from_sites(acc, step)


def is_nondegenerate(m: LatticeMeasure) -> bool:
    """True iff the restriction to (0, infinity) is a non-zero measure."""
    return not m.positive_part().is_zero
