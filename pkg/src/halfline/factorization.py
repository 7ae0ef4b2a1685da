"""Canonical factorization on the lower half-plane and related evaluators.

A holomorphic function of bounded type on C_- = {Im z < 0} splits into three
factors, compared here on moduli only (each factor is canonical only up to a
unimodular constant):

  Blaschke   B(z) = ((z+i)/(z-i))^a0 * prod_j (|1+z_j^2|/(1+z_j^2)
                                               * (z-z_j)/(z-conj(z_j)))^a_j
  outer      |O(z)| = exp( (1/pi) Int (-Im z)/|z-x|^2 * log|f(x)| dx )
  singular   |S(z)| = exp( a*Im z - (1/pi) * sum_atoms w * (-Im z)/|z-x|^2 )

with the boundedness criterion: f is bounded on C_- iff a >= 0, all singular
atom weights are >= 0, and the boundary modulus is bounded.

Also here: characteristic functions of lattice measures as finite exponential
sums, the meromorphic continuation of the positive-part transform through the
lower half-plane when (mu_+ * mu_-)_+ = 0, and the explicit function
z^2 (z+i)^-4 exp(i/z) whose upper-half-plane extension blows up at the origin.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import (
    DomainError,
    InvalidInputError,
    NearSingularityError,
    NumericError,
)
from .measures import LatticeMeasure, convolve

__all__ = [
    "BlaschkeData",
    "SingularData",
    "FactorizationResult",
    "blaschke_eval",
    "outer_modulus",
    "singular_modulus",
    "factorize_rational",
    "reconstructed_modulus",
    "is_bounded",
    "char_function",
    "extension_phi",
    "counterexample_char",
    "counterexample_ratio_check",
]

# zeros this close to -i belong to the leading ((z+i)/(z-i))^a0 factor,
# where the generic Blaschke term degenerates (1 + z_j^2 = 0)
_ALPHA0_RADIUS = 1e-9

# |log|f|| beyond this is clamped before quadrature; the clamp can only act
# on sets so small that the integral shifts far below any useful tolerance
_LOG_CLAMP = 1e6


@dataclass(frozen=True)
class BlaschkeData:
    """Zero data of a finite Blaschke product on C_-.

    ``alpha0`` is the multiplicity at z = -i; ``zeros`` holds (z_j, mult)
    pairs with Im z_j < 0 and z_j away from -i.
    """

    alpha0: int = 0
    zeros: tuple = ()

    def __post_init__(self):
        if self.alpha0 < 0:
            raise InvalidInputError(f"alpha0 must be >= 0, got {self.alpha0}")
        zeros = tuple((complex(z), int(mult)) for z, mult in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        for z, mult in zeros:
            if mult < 1:
                raise InvalidInputError(f"zero multiplicity must be >= 1, got {mult}")
            if z.imag >= 0:
                raise InvalidInputError(f"Blaschke zero {z} is not in the lower half-plane")
            if abs(z + 1j) < _ALPHA0_RADIUS:
                raise InvalidInputError(
                    f"zero {z} coincides with -i; its multiplicity belongs in alpha0"
                )

    def to_json_obj(self) -> dict:
        return {
            "alpha0": self.alpha0,
            "zeros": [[z.real, z.imag, mult] for z, mult in self.zeros],
        }


@dataclass(frozen=True)
class SingularData:
    """Exponential coefficient ``a`` and atomic boundary singular weights.

    Atom weights may be negative: ratios of bounded functions carry signed
    singular data, and the sign is exactly what the boundedness criterion
    inspects.
    """

    a: float = 0.0
    atoms: tuple = ()

    def __post_init__(self):
        atoms = tuple((float(x), float(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)

    def scaled(self, n: int) -> "SingularData":
        """Data of the n-th power: n*a and n-scaled atom weights."""
        return SingularData(a=n * self.a, atoms=tuple((x, n * w) for x, w in self.atoms))

    def to_json_obj(self) -> dict:
        return {"a": self.a, "atoms": [[x, w] for x, w in self.atoms]}


@dataclass(frozen=True, eq=False)
class FactorizationResult:
    """Blaschke zeros, outer boundary data, and singular parameters of f."""

    blaschke: BlaschkeData
    boundary_log_modulus: Callable[[float], float]
    singular: SingularData
    quad_tol: float = 1e-8
    boundary_breakpoints: tuple = ()  # known log-singularities on the real axis

    def to_json_obj(self) -> dict:
        return {
            "blaschke": self.blaschke.to_json_obj(),
            "singular": self.singular.to_json_obj(),
            "quad_tol": self.quad_tol,
            "boundary_breakpoints": list(self.boundary_breakpoints),
        }


def blaschke_eval(b: BlaschkeData, z: complex) -> complex:
    """Evaluate the Blaschke product; |result| <= 1 on C_-, = 1 on R."""
    z = complex(z)
    if z.imag > 0:
        raise DomainError(f"Blaschke product evaluated at {z}, not in the closed C_-")
    value = ((z + 1j) / (z - 1j)) ** b.alpha0
    for zj, mult in b.zeros:
        one = 1 + zj * zj
        value *= (abs(one) / one * (z - zj) / (z - zj.conjugate())) ** mult
    return value


def outer_modulus(
    boundary_log_modulus: Callable[[float], float],
    z: complex,
    tol: float = 1e-8,
    breakpoints: Sequence[float] = (),
) -> float:
    """Poisson integral of the boundary log-modulus, exponentiated.

    The substitution x = Re z + (-Im z) tan(theta) turns the kernel into the
    uniform measure on (-pi/2, pi/2), so the integrand is just the boundary
    function along a resampled axis. ``breakpoints`` lists boundary points
    with log-singularities (zeros of f on R); they are handed to the
    quadrature as subdivision points.
    """
    z = complex(z)
    if z.imag >= 0:
        raise DomainError(f"outer factor evaluated at {z}, not in the open C_-")
    if not (tol > 0):
        raise InvalidInputError(f"quadrature tolerance must be positive, got {tol}")
    x0, y = z.real, -z.imag

    def integrand(theta: float) -> float:
        val = boundary_log_modulus(x0 + y * math.tan(theta))
        if val != val:  # NaN from the boundary callable
            raise NumericError(f"boundary log-modulus undefined near x = {x0 + y * math.tan(theta):g}")
        return max(-_LOG_CLAMP, min(_LOG_CLAMP, val))

    points = sorted(math.atan((bp - x0) / y) for bp in breakpoints)
    integral, err = quad(
        integrand,
        -math.pi / 2,
        math.pi / 2,
        points=points or None,
        epsabs=tol,
        epsrel=0.0,
        limit=200,
    )
    if not math.isfinite(integral) or err > max(10 * tol, 1e-10 * abs(integral)):
        worst = _worst_region(integrand, x0, y)
        raise NumericError(
            f"Poisson quadrature failed to reach tolerance {tol:g} "
            f"(estimated error {err:g}); integrand largest near x = {worst:g}"
        )
    return math.exp(integral / math.pi)


def _worst_region(integrand, x0: float, y: float) -> float:
    thetas = np.linspace(-math.pi / 2 + 1e-6, math.pi / 2 - 1e-6, 201)
    vals = [abs(integrand(t)) for t in thetas]
    return x0 + y * math.tan(thetas[int(np.argmax(vals))])


def singular_modulus(s: SingularData, z: complex) -> float:
    """Modulus of the singular inner factor at z in the open C_-."""
    z = complex(z)
    if z.imag >= 0:
        raise DomainError(f"singular factor evaluated at {z}, not in the open C_-")
    exponent = s.a * z.imag
    for x, w in s.atoms:
        exponent -= w * (-z.imag) / (abs(z - x) ** 2) / math.pi
    return math.exp(exponent)


def _group_roots(roots: Sequence[complex], tol: float = _ALPHA0_RADIUS) -> list:
    """Collect repeated roots into (value, multiplicity) pairs."""
    groups: list[list] = []
    for r in map(complex, roots):
        for g in groups:
            if abs(r - g[0]) <= tol:
                g[1] += 1
                break
        else:
            groups.append([r, 1])
    return [(r, m) for r, m in groups]


def factorize_rational(
    num_roots: Sequence[complex],
    den_roots: Sequence[complex],
    scale: complex = 1.0,
) -> FactorizationResult:
    """Factor f(z) = scale * prod(z - r) / prod(z - p) over C_-.

    Zeros in the open lower half-plane populate the Blaschke data (those at
    -i via alpha0); real zeros contribute integrable log-singularities to
    the boundary data; the singular part of a rational function is trivial
    (a = 0, no atoms). Poles must stay in the open upper half-plane: a pole
    on R breaks log-integrability of the boundary data, a pole below R
    breaks holomorphy.
    """
    scale = complex(scale)
    if scale == 0:
        raise InvalidInputError("scale 0 gives the zero function, which has no factorization")
    zeros = _group_roots(num_roots)
    poles = _group_roots(den_roots)
    for p, _ in poles:
        if p.imag == 0:
            raise InvalidInputError(f"pole {p} on the real axis")
        if p.imag < 0:
            raise InvalidInputError(f"pole {p} in the lower half-plane; f is not holomorphic on C_-")

    alpha0 = 0
    blaschke_zeros = []
    breakpoints = []
    for r, mult in zeros:
        if abs(r + 1j) <= _ALPHA0_RADIUS:
            alpha0 += mult
        elif r.imag < 0:
            blaschke_zeros.append((r, mult))
        elif r.imag == 0:
            breakpoints.append(r.real)
        # zeros in C_+ only shape the boundary modulus

    def boundary_log_modulus(x: float) -> float:
        val = math.log(abs(scale))
        for r, mult in zeros:
            d = abs(complex(x, 0) - r)
            val += mult * (math.log(d) if d > 0 else -math.inf)
        for p, mult in poles:
            val -= mult * math.log(abs(complex(x, 0) - p))
        return val

    return FactorizationResult(
        blaschke=BlaschkeData(alpha0=alpha0, zeros=tuple(blaschke_zeros)),
        boundary_log_modulus=boundary_log_modulus,
        singular=SingularData(),
        boundary_breakpoints=tuple(breakpoints),
    )


def reconstructed_modulus(fr: FactorizationResult, z: complex) -> float:
    """|f(z)| rebuilt as |Blaschke| * outer * singular at z in the open C_-."""
    return (
        abs(blaschke_eval(fr.blaschke, z))
        * outer_modulus(fr.boundary_log_modulus, z, fr.quad_tol, fr.boundary_breakpoints)
        * singular_modulus(fr.singular, z)
    )


def is_bounded(fr: FactorizationResult, boundary_bound: float, samples: int = 2001) -> bool:
    """Boundedness criterion: a >= 0, atoms >= 0, boundary modulus <= bound.

    The boundary supremum is approximated on a tan-spaced sample of R.
    """
    if fr.singular.a < 0:
        return False
    if any(w < 0 for _, w in fr.singular.atoms):
        return False
    thetas = np.linspace(-math.pi / 2 + 1e-8, math.pi / 2 - 1e-8, samples)
    sup = max(fr.boundary_log_modulus(math.tan(t)) for t in thetas)
    return sup <= math.log(boundary_bound) + 1e-12


# -- characteristic functions and the holomorphic extension ------------------


def char_function(m: LatticeMeasure, z: complex) -> complex:
    """Fourier transform sum_j c_j exp(i z j h) of a lattice measure."""
    z = complex(z)
    return sum(c and complex(c) * cmath.exp(1j * z * (site * m.step)) for site, c in m.items())


def _g_zero_distance(minus: LatticeMeasure, z: complex, eps: float) -> float:
    """Distance from z to the detected zero set of the transform of mu_-.

    With u = exp(i z h), that transform is u^(j_min) * P(u) for a polynomial
    P, so its zeros form horizontal lattices Re z in (arg u_r + 2 pi k)/h,
    Im z = -log|u_r|/h, one per root u_r of P. Only roots at or below the
    axis (Im <= eps) matter for the h/g branch.
    """
    h = minus.step
    coeffs = [0.0] * (0 - minus.min_index + 1)
    for site, c in minus.items():
        coeffs[-site] = float(c)  # np.roots wants the highest power first
    roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([])
    best = math.inf
    for u in roots:
        if u == 0:
            continue
        y = -math.log(abs(u)) / h
        if y > eps:
            continue  # zero strictly above the axis: irrelevant for C_- u R
        dx = math.remainder(z.real - cmath.phase(u) / h, 2 * math.pi / h)
        best = min(best, math.hypot(dx, z.imag - y))
    return best


def extension_phi(m: LatticeMeasure, z: complex, eps: float = 1e-9) -> complex:
    """Holomorphic extension of the positive-part transform of m.

    Requires (m_+ * m_-)_+ = 0. Above the axis the value is the transform
    of m_+ itself; below, it is the transform of m_+ * m_- divided by the
    transform of m_-, and the two branches agree on R away from the real
    zeros of the denominator. Points within ``eps`` of a detected zero of
    the denominator are refused.
    """
    z = complex(z)
    plus = m.positive_part()
    minus = m.nonpositive_part()
    if minus.is_zero:
        raise InvalidInputError("nonpositive part is zero; the continuation h/g is undefined")
    conv = convolve(plus, minus)
    if not conv.positive_part().is_zero:
        raise InvalidInputError(
            "(m_+ * m_-) has mass on (0, infinity); the extension premise fails"
        )
    if z.imag <= 0:
        dist = _g_zero_distance(minus, z, eps)
        if dist < eps:
            raise NearSingularityError(
                f"z = {z} is within {eps:g} of a zero of the denominator transform"
            )
    if z.imag >= 0:
        return char_function(plus, z)
    return char_function(conv, z) / char_function(minus, z)


# -- the explicit boundary-blow-up example -----------------------------------


def counterexample_char(z: complex) -> complex:
    """Evaluate z^2 (z+i)^-4 exp(i/z); undefined at z = 0 and z = -i."""
    z = complex(z)
    if z == 0 or z == -1j:
        raise DomainError(f"function undefined at z = {z}")
    try:
        return z * z * (z + 1j) ** -4 * cmath.exp(1j / z)
    except OverflowError as exc:
        raise NumericError(f"exp(i/z) overflows at z = {z}") from exc


def counterexample_ratio_check(z: complex) -> float:
    """Relative residual of writing the function as a ratio of two
    transforms of measures supported in [0, infinity):
    z^4/(z+i)^8 over z^2 (z+i)^-4 exp(-i/z). Zero up to rounding."""
    z = complex(z)
    if z == 0 or z == -1j:
        raise DomainError(f"ratio undefined at z = {z}")
    value = counterexample_char(z)
    try:
        numer = z**4 / (z + 1j) ** 8
        denom = z * z * (z + 1j) ** -4 * cmath.exp(-1j / z)
    except OverflowError as exc:
        raise NumericError(f"ratio factors overflow at z = {z}") from exc
    if denom == 0 or value == 0:
        raise NumericError(f"ratio degenerates at z = {z}")
    return abs(value - numer / denom) / abs(value)
