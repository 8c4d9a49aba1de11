"""Quantized rate ladder from the at-the-money boundary condition.

Requiring the oscillatory hedged-form solution A*sin(sqrt(r/D)*x) to vanish
at the strike K pins the wavenumber to integer multiples of pi/K, exactly as
a standing wave confined to [0, K]. Only a discrete ladder of rates survives:

    r_n = (sigma^2 / (2*K^2)) * n^2 * pi^2,   n = 1, 2, ...

This module builds that ladder, inverts it, normalizes the mode amplitude so
the squared profile integrates to one over [0, K], and tabulates the
time-weighted payoff surface.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

from .errors import ValidationError
from .ode import SineSolution, sine_solution
from .payoff import DiscountSign

__all__ = [
    "ModeSpec",
    "RateSpectrum",
    "IntegralMethod",
    "NormalizationResult",
    "PayoffSurface",
    "quantized_rate",
    "mode_index",
    "boundary_residual",
    "normalization_constant",
    "payoff_surface",
]


def _check_positive(**kwargs) -> None:
    for name, value in kwargs.items():
        if not (value > 0):
            raise ValidationError(f"{name} must be > 0, got {value!r}")


def quantized_rate(n: int, sigma: float, strike: float) -> float:
    """Rate of mode ``n``: (sigma^2/(2*K^2)) * n^2 * pi^2.

    n = 0 is computable but degenerate (zero rate, identically zero payoff)
    and triggers a warning; negative n is rejected since it only flips the
    sign of the mode amplitude.
    """
    _check_positive(sigma=sigma, strike=strike)
    if n != int(n) or n < 0:
        raise ValidationError(f"n must be a non-negative integer, got {n!r}")
    if n == 0:
        warnings.warn("mode n=0 is degenerate: rate 0 and identically zero payoff")
        return 0.0
    return (sigma * sigma / (2.0 * strike * strike)) * n * n * math.pi * math.pi


@dataclass(frozen=True)
class ModeSpec:
    """Quantized mode n on the strike interval [0, K]."""

    n: int
    sigma: float
    strike: float

    def __post_init__(self):
        _check_positive(sigma=self.sigma, strike=self.strike)
        if self.n != int(self.n) or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n!r}")

    @property
    def diffusion(self) -> float:
        return 0.5 * self.sigma * self.sigma

    @property
    def rate(self) -> float:
        return quantized_rate(self.n, self.sigma, self.strike)

    @property
    def wavenumber(self) -> float:
        return self.n * math.pi / self.strike

    def solution(self, amplitude: float) -> SineSolution:
        """Mode profile amplitude*sin(sqrt(r_n/D)*x) as an ODE evaluator."""
        return sine_solution(amplitude, self.rate, self.sigma)


@dataclass(frozen=True)
class RateSpectrum:
    """Modes n = 1..n_max for fixed volatility and strike."""

    sigma: float
    strike: float
    modes: tuple[ModeSpec, ...]

    @classmethod
    def build(cls, sigma: float, strike: float, n_max: int) -> "RateSpectrum":
        _check_positive(sigma=sigma, strike=strike)
        if n_max < 1:
            raise ValidationError(f"n_max must be >= 1, got {n_max!r}")
        modes = tuple(ModeSpec(n=n, sigma=sigma, strike=strike) for n in range(1, n_max + 1))
        return cls(sigma=sigma, strike=strike, modes=modes)

    def __iter__(self):
        return iter(self.modes)

    def __len__(self):
        return len(self.modes)


def mode_index(r: float, sigma: float, strike: float, rel_tol: float) -> tuple[int, bool]:
    """Nearest mode index for a rate, and whether the rate sits on the ladder.

    Inverts the ladder via n = sqrt(2*r*K^2/sigma^2)/pi, rounds to the
    nearest integer (at least 1), and accepts iff the rounded mode's rate is
    within ``rel_tol`` relative error of ``r``.
    """
    _check_positive(sigma=sigma, strike=strike, rel_tol=rel_tol)
    if not (r > 0):
        raise ValidationError(f"r must be > 0, got {r!r}")
    n_exact = math.sqrt(2.0 * r * strike * strike / (sigma * sigma)) / math.pi
    n_star = max(1, round(n_exact))
    admissible = abs(quantized_rate(n_star, sigma, strike) - r) <= rel_tol * r
    return n_star, admissible


def boundary_residual(n: int, sigma: float, strike: float) -> float:
    """|sin(sqrt(r_n/D)*K)|: the computable witness that mode n vanishes at K."""
    if n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    rate = quantized_rate(n, sigma, strike)
    wavenumber = math.sqrt(rate / (0.5 * sigma * sigma))
    return abs(math.sin(wavenumber * strike))


class IntegralMethod(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class NormalizationResult:
    """Amplitude making the squared profile integrate to one over [0, K]."""

    amplitude: float
    integral: float
    method: IntegralMethod
    estimated_error: float


def normalization_constant(
    r: float,
    sigma: float,
    strike: float,
    method: IntegralMethod = IntegralMethod.CLOSED_FORM,
) -> NormalizationResult:
    """Normalization amplitude A = (integral_0^K sin^2(a*x) dx)^(-1/2), a = sqrt(r/D).

    The integral is always computed both ways: the antiderivative
    K/2 - sin(2*a*K)/(4*a) and adaptive quadrature. ``method`` selects which
    value is reported; the cross-check discrepancy is returned as the
    estimated error. On the rate ladder the sine term vanishes and
    A = sqrt(2/K) exactly.
    """
    _check_positive(r=r, sigma=sigma, strike=strike)
    a = math.sqrt(r / (0.5 * sigma * sigma))
    closed = 0.5 * strike - math.sin(2.0 * a * strike) / (4.0 * a)
    quad_value, _ = integrate.quad(
        lambda x: math.sin(a * x) ** 2, 0.0, strike, epsabs=1e-10, epsrel=1e-10, limit=400
    )
    value = closed if method is IntegralMethod.CLOSED_FORM else quad_value
    if value <= 0:
        raise ValidationError(f"normalization integral must be > 0, got {value!r}")
    return NormalizationResult(
        amplitude=value ** -0.5,
        integral=value,
        method=method,
        estimated_error=abs(closed - quad_value),
    )


@dataclass(frozen=True)
class PayoffSurface:
    """Tabulated Y(x, t) = amplitude*sin(a_n*x)*e^{sign*r_n*t} on a grid.

    ``values[i, j]`` holds Y(x[i], t[j]). ``outside_domain`` marks x points
    beyond [0, K], where the profile is defined but not normalized.
    """

    x: np.ndarray
    t: np.ndarray
    values: np.ndarray
    mode: ModeSpec
    amplitude: float
    sign: DiscountSign
    outside_domain: np.ndarray


def payoff_surface(
    mode: ModeSpec,
    amplitude: float,
    x_grid,
    t_grid,
    sign: DiscountSign = DiscountSign.PLUS,
) -> PayoffSurface:
    """Rectangular table of the time-weighted mode payoff.

    The growth convention (PLUS) reproduces the oscillatory surface as
    written in the closed form; MINUS applies standard discounting instead.
    """
    _check_positive(amplitude=amplitude)
    x = np.atleast_1d(np.asarray(x_grid, dtype=float))
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t.size and t.min() < 0:
        raise ValidationError(f"t grid must be non-negative, got min {t.min()!r}")
    profile = amplitude * np.sin(mode.wavenumber * x)
    weight = np.exp(sign.factor * mode.rate * t)
    return PayoffSurface(
        x=x,
        t=t,
        values=profile[:, None] * weight[None, :],
        mode=mode,
        amplitude=amplitude,
        sign=sign,
        outside_domain=(x < 0) | (x > mode.strike),
    )
