"""Constant-coefficient expected-payoff ODEs and their closed-form solutions.

Two second-order problems for the payoff profile V(x) appear in this lab:

* full form:    r*V + r*V' + (sigma^2/2)*V'' = 0
* hedged form:  r*V + (sigma^2/2)*V''        = 0   (the V' term removed)

The hedged form drops the first-derivative term, which is delta hedging
expressed as an equation choice rather than a trading strategy. Both have
exponential/oscillatory closed forms through their characteristic roots;
candidate solutions are checked numerically via central-difference residuals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError

__all__ = [
    "OdeForm",
    "OdeProblem",
    "RootCase",
    "CharacteristicRoots",
    "SineSolution",
    "ExponentialSolution",
    "DeltaGamma",
    "characteristic_roots_full",
    "characteristic_roots_hedged",
    "sine_solution",
    "general_solution",
    "delta_gamma",
    "residual",
]


class OdeForm(str, Enum):
    FULL = "full"
    HEDGED = "hedged"


class RootCase(str, Enum):
    COMPLEX_CONJUGATE = "complex_conjugate"
    DISTINCT_REAL = "distinct_real"
    REPEATED_REAL = "repeated_real"


@dataclass(frozen=True)
class OdeProblem:
    """One of the two payoff ODEs, with diffusion constant D = sigma^2/2."""

    r: float
    sigma: float
    form: OdeForm

    def __post_init__(self):
        if not (self.sigma > 0):
            raise ValidationError(f"sigma must be > 0, got {self.sigma!r}")

    @property
    def diffusion(self) -> float:
        return 0.5 * self.sigma * self.sigma


@dataclass(frozen=True)
class CharacteristicRoots:
    """Root pair of a characteristic polynomial, tagged by case.

    ``root1`` carries the larger real part (distinct real case) or the
    positive imaginary part (complex case); repeated roots store the same
    value twice.
    """

    case: RootCase
    root1: complex
    root2: complex


def characteristic_roots_full(r: float, sigma: float) -> CharacteristicRoots:
    """Roots of (sigma^2/2)*lam^2 + r*lam + r = 0.

    Case boundaries in the (r, sigma) plane: complex conjugates for
    0 < r < 2*sigma^2, a repeated real root at r = 0 and r = 2*sigma^2,
    distinct real roots otherwise.
    """
    if not (sigma > 0):
        raise ValidationError(f"sigma must be > 0, got {sigma!r}")
    if not math.isfinite(r):
        raise ValidationError(f"r must be finite, got {r!r}")
    a = 0.5 * sigma * sigma
    sig2 = sigma * sigma
    if r == 0.0:
        return CharacteristicRoots(RootCase.REPEATED_REAL, 0j, 0j)
    disc = r * r - 2.0 * sig2 * r
    # The repeated-root boundary r = 2*sigma^2 is a zero of the discriminant;
    # honor it within a few ulps of the computed value.
    if abs(disc) <= 8.0 * np.finfo(float).eps * (r * r + 2.0 * sig2 * abs(r)):
        lam = complex(-r / sig2)
        return CharacteristicRoots(RootCase.REPEATED_REAL, lam, lam)
    if 0.0 < r < 2.0 * sig2:
        real = -r / sig2
        imag = math.sqrt(-disc) / sig2
        return CharacteristicRoots(
            RootCase.COMPLEX_CONJUGATE, complex(real, imag), complex(real, -imag)
        )
    # Distinct real: evaluate the quadratic formula in its cancellation-free
    # arrangement, then order by real part.
    sq = math.sqrt(disc)
    q = -0.5 * (r + math.copysign(sq, r))
    lo, hi = sorted((q / a, r / q))
    return CharacteristicRoots(RootCase.DISTINCT_REAL, complex(hi), complex(lo))


def characteristic_roots_hedged(r: float, sigma: float) -> CharacteristicRoots:
    """Roots of r + (sigma^2/2)*lam^2 = 0: purely imaginary +/- i*sqrt(r/D)."""
    if not (sigma > 0):
        raise ValidationError(f"sigma must be > 0, got {sigma!r}")
    if r < 0:
        raise ValidationError(f"r must be >= 0 for the hedged form, got {r!r}")
    if r == 0.0:
        return CharacteristicRoots(RootCase.REPEATED_REAL, 0j, 0j)
    w = math.sqrt(r / (0.5 * sigma * sigma))
    return CharacteristicRoots(RootCase.COMPLEX_CONJUGATE, complex(0.0, w), complex(0.0, -w))


@dataclass(frozen=True)
class SineSolution:
    """V(x) = amplitude * sin(wavenumber * x); vanishes at x = 0."""

    amplitude: float
    wavenumber: float

    def __call__(self, x):
        return self.amplitude * np.sin(self.wavenumber * x)


def sine_solution(amplitude: float, r: float, sigma: float) -> SineSolution:
    """Oscillatory hedged-form solution with wavenumber sqrt(r/D), D = sigma^2/2."""
    if not (r > 0):
        raise ValidationError(f"r must be > 0, got {r!r}")
    if not (sigma > 0):
        raise ValidationError(f"sigma must be > 0, got {sigma!r}")
    return SineSolution(amplitude=amplitude, wavenumber=math.sqrt(r / (0.5 * sigma * sigma)))


@dataclass(frozen=True)
class ExponentialSolution:
    """Two-parameter closed form over a characteristic root pair.

    Evaluates coef1*e^{root1*x} + coef2*e^{root2*x}, or
    (coef1 + coef2*x)*e^{root*x} for a repeated root. The real part is
    returned: for real ODE coefficients the real part of a complex solution
    is itself a solution, and conjugate-symmetric coefficients make the
    imaginary part vanish identically.
    """

    roots: CharacteristicRoots
    coef1: complex
    coef2: complex

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.roots.case is RootCase.REPEATED_REAL:
            val = (self.coef1 + self.coef2 * x) * np.exp(self.roots.root1 * x)
        else:
            val = self.coef1 * np.exp(self.roots.root1 * x) + self.coef2 * np.exp(
                self.roots.root2 * x
            )
        out = np.real(val)
        return float(out) if out.ndim == 0 else out


def general_solution(roots: CharacteristicRoots, coef1: complex, coef2: complex) -> ExponentialSolution:
    """Closed-form solution with free coefficients over the given roots."""
    for name, value in (("coef1", coef1), ("coef2", coef2)):
        if not (cmath.isfinite(complex(value))):
            raise ValidationError(f"{name} must be finite, got {value!r}")
    return ExponentialSolution(roots=roots, coef1=complex(coef1), coef2=complex(coef2))


@dataclass(frozen=True)
class DeltaGamma:
    """Central-difference first and second derivatives at a point."""

    delta: float
    gamma: float
    step: float


def delta_gamma(v, x: float, h: float) -> DeltaGamma:
    """Delta and gamma of an evaluator by second-order central differences.

    Both estimates carry O(h^2) truncation error for four-times
    differentiable evaluators. Steps below 1e-8*max(1, |x|) are rejected:
    there subtractive cancellation, not truncation, dominates.
    """
    if not (h > 0):
        raise ValidationError(f"h must be > 0, got {h!r}")
    if h < 1e-8 * max(1.0, abs(x)):
        raise ValidationError(
            f"h={h!r} is below the cancellation floor 1e-8*max(1, |x|) at x={x!r}"
        )
    up = float(v(x + h))
    down = float(v(x - h))
    mid = float(v(x))
    return DeltaGamma(
        delta=(up - down) / (2.0 * h),
        gamma=(up - 2.0 * mid + down) / (h * h),
        step=h,
    )


def residual(v, problem: OdeProblem, x: float, h: float) -> float:
    """Left-hand side of the selected ODE at x, derivatives by central differences.

    Exact closed-form solutions give residuals that vanish at rate O(h^2).
    """
    dg = delta_gamma(v, x, h)
    value = float(v(x))
    if problem.form is OdeForm.FULL:
        return problem.r * value + problem.r * dg.delta + problem.diffusion * dg.gamma
    return problem.r * value + problem.diffusion * dg.gamma
