"""Monte Carlo drift laboratory for the weighted payoff process.

For a payoff profile V and the additive price model, the process
Y(t) = V(X(t)) * e^{sign*r*t} has the one-step Ito drift

    e^{sign*r*t} * (sign*r*V(x) + r*V'(x) + (sigma^2/2)*V''(x)).

This module estimates that drift by one-step Monte Carlo from a fixed state
(exploiting the exactness of the Gaussian one-step law), compares it to the
finite-difference analytic value, and classifies the process as consistent
with a martingale, a strict supermartingale, or neither, at a caller-chosen
z threshold. Nothing here asserts which holds; it measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NonFiniteSampleError, ValidationError
from .model import ModelParams, SeedStreams, exact_marginal, validate_params
from .ode import SineSolution, delta_gamma
from .payoff import DiscountSign

__all__ = [
    "DriftReport",
    "DriftClass",
    "MartingaleVerdict",
    "IntegrabilityWitness",
    "analytic_drift",
    "drift_estimate",
    "classify",
    "integrability_check",
]

_CHUNK = 1 << 13  # fixed sampling chunk; part of the determinism contract
_MIN_SAMPLES = 1000
_MAX_DT = 1e-2


@dataclass(frozen=True)
class DriftReport:
    """One-step Monte Carlo drift estimate with its analytic counterpart."""

    x0: float
    t: float
    dt: float
    n_samples: int
    estimated_drift_rate: float
    standard_error: float
    analytic_drift_rate: float
    z_score: float
    sign_convention: DiscountSign
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "x0": self.x0,
            "t": self.t,
            "dt": self.dt,
            "n_samples": self.n_samples,
            "estimated_drift_rate": self.estimated_drift_rate,
            "standard_error": self.standard_error,
            "analytic_drift_rate": self.analytic_drift_rate,
            "z_score": self.z_score,
            "sign_convention": self.sign_convention.value,
            "degenerate": self.degenerate,
        }


class DriftClass(str, Enum):
    CONSISTENT_WITH_MARTINGALE = "consistent_with_martingale"
    SUPERMARTINGALE_STRICT = "supermartingale_strict"
    VIOLATES_SUPERMARTINGALE = "violates_supermartingale"


@dataclass(frozen=True)
class MartingaleVerdict:
    classification: DriftClass
    confidence_multiplier: float


def analytic_drift(
    v,
    r: float,
    sigma: float,
    x: float,
    t: float,
    sign: DiscountSign = DiscountSign.PLUS,
    h: float = 1e-3,
) -> float:
    """Ito drift of V(X)e^{sign*r*t} at state x, derivatives by central differences."""
    if sigma < 0:
        raise ValidationError(f"sigma must be >= 0, got {sigma!r}")
    if t < 0:
        raise ValidationError(f"t must be >= 0, got {t!r}")
    dg = delta_gamma(v, x, h)
    s = sign.factor
    return math.exp(s * r * t) * (
        s * r * float(v(x)) + r * dg.delta + 0.5 * sigma * sigma * dg.gamma
    )


def drift_estimate(
    v,
    p: ModelParams,
    x0: float,
    t: float,
    dt: float,
    n_samples: int,
    seed: int,
    sign: DiscountSign = DiscountSign.PLUS,
    h: float = 1e-3,
) -> DriftReport:
    """Estimate the conditional drift of Y = V(X)e^{sign*r*t} from state x0.

    Draws X(t+dt) = x0 + mu*dt + sigma*sqrt(dt)*Z exactly (Gaussian one-step
    law), averages the per-sample increment of Y divided by dt, and reports
    the standard error together with the analytic drift and the z-score of
    their difference. Deterministic for a fixed seed: samples come from
    fixed-size substream chunks, so the estimate does not depend on worker
    count or execution order.

    Parameters
    ----------
    v : callable
        Payoff profile; must accept numpy arrays.
    p : ModelParams
        Supplies rate, volatility, and drift. ``p.x0`` is ignored; the probe
        state ``x0`` is explicit.
    x0, t : float
        Probe state and time.
    dt : float
        One-step horizon, at most 1e-2 so the O(dt) bias of the difference
        quotient stays below statistical noise at typical sample counts.
    n_samples : int
        At least 1000.
    seed : int
        Master seed (64-bit unsigned).
    sign : DiscountSign
        Exponential weight convention for Y.
    h : float
        Central-difference step for the analytic drift.
    """
    validate_params(p)
    if not (0 < dt <= _MAX_DT):
        raise ValidationError(f"dt must be in (0, {_MAX_DT}], got {dt!r}")
    if n_samples < _MIN_SAMPLES:
        raise ValidationError(f"n_samples must be >= {_MIN_SAMPLES}, got {n_samples!r}")
    if t < 0:
        raise ValidationError(f"t must be >= 0, got {t!r}")

    s = sign.factor
    w_now = math.exp(s * p.r * t)
    w_next = math.exp(s * p.r * (t + dt))
    y_now = float(v(x0)) * w_now
    step_mean = x0 + p.mu * dt
    step_scale = p.sigma * math.sqrt(dt)
    analytic = analytic_drift(v, p.r, p.sigma, x0, t, sign, h)

    if p.sigma == 0.0:
        # Every sample is the same deterministic difference quotient.
        mean = (float(v(step_mean)) * w_next - y_now) / dt
        return DriftReport(
            x0=x0,
            t=t,
            dt=dt,
            n_samples=n_samples,
            estimated_drift_rate=mean,
            standard_error=0.0,
            analytic_drift_rate=analytic,
            z_score=math.nan,
            sign_convention=sign,
            degenerate=True,
        )

    streams = SeedStreams(seed)
    rates = np.empty(n_samples)
    for chunk_idx, start in enumerate(range(0, n_samples, _CHUNK)):
        size = min(_CHUNK, n_samples - start)
        z = streams.generator(chunk_idx).standard_normal(size)
        dy = np.asarray(v(step_mean + step_scale * z), dtype=float) * w_next - y_now
        rates[start : start + size] = dy / dt

    mean = float(rates.mean())
    se = float(rates.std(ddof=1)) / math.sqrt(n_samples)
    degenerate = se == 0.0
    z_score = (mean - analytic) / se if se > 0 else math.nan
    return DriftReport(
        x0=x0,
        t=t,
        dt=dt,
        n_samples=n_samples,
        estimated_drift_rate=mean,
        standard_error=se,
        analytic_drift_rate=analytic,
        z_score=z_score,
        sign_convention=sign,
        degenerate=degenerate,
    )


def classify(report: DriftReport, z_threshold: float = 3.0) -> MartingaleVerdict:
    """Classify the measured drift against zero at the given z threshold."""
    if not (z_threshold > 0):
        raise ValidationError(f"z_threshold must be > 0, got {z_threshold!r}")
    est = report.estimated_drift_rate
    se = report.standard_error
    if se > 0:
        z = est / se
    else:
        z = 0.0 if est == 0.0 else math.copysign(math.inf, est)
    if abs(z) <= z_threshold:
        cls = DriftClass.CONSISTENT_WITH_MARTINGALE
    elif z < 0:
        cls = DriftClass.SUPERMARTINGALE_STRICT
    else:
        cls = DriftClass.VIOLATES_SUPERMARTINGALE
    return MartingaleVerdict(classification=cls, confidence_multiplier=z_threshold)


@dataclass(frozen=True)
class IntegrabilityWitness:
    """Monte Carlo evidence that E|Y(t)| is finite."""

    mean_abs: float
    standard_error: float
    n_samples: int
    t: float
    analytic_bound: float | None = None


def integrability_check(
    v,
    p: ModelParams,
    t: float,
    n_samples: int,
    seed: int,
    sign: DiscountSign = DiscountSign.PLUS,
) -> IntegrabilityWitness:
    """Estimate E|V(X(t))e^{sign*r*t}| and abort on any non-finite sample.

    For a bounded sine profile the analytic bound |A|*e^{|r|t} is attached
    as well; it holds for every t regardless of the sample.
    """
    validate_params(p)
    if n_samples < _MIN_SAMPLES:
        raise ValidationError(f"n_samples must be >= {_MIN_SAMPLES}, got {n_samples!r}")
    law = exact_marginal(p, t)
    weight = math.exp(sign.factor * p.r * t)
    streams = SeedStreams(seed)
    samples = np.empty(n_samples)
    for chunk_idx, start in enumerate(range(0, n_samples, _CHUNK)):
        size = min(_CHUNK, n_samples - start)
        z = streams.generator(chunk_idx).standard_normal(size)
        y = np.abs(np.asarray(v(law.mean + law.std * z), dtype=float) * weight)
        if not np.all(np.isfinite(y)):
            bad = int(np.flatnonzero(~np.isfinite(y))[0])
            raise NonFiniteSampleError(
                f"non-finite |Y| sample at index {start + bad}: payoff evaluated to "
                f"{y[bad]!r} at X = {float(law.mean + law.std * z[bad])!r}"
            )
        samples[start : start + size] = y
    bound = None
    if isinstance(v, SineSolution):
        bound = abs(v.amplitude) * math.exp(abs(p.r) * t)
    return IntegrabilityWitness(
        mean_abs=float(samples.mean()),
        standard_error=float(samples.std(ddof=1)) / math.sqrt(n_samples),
        n_samples=n_samples,
        t=t,
        analytic_bound=bound,
    )
