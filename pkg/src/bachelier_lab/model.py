"""Additive (arithmetic Brownian) stock-price model.

The price follows X(t) = x0 + mu*t + sigma*W(t) with constant drift and
volatility, so increments over a time grid are exactly Gaussian and paths can
be simulated without discretization bias. Under no-arbitrage the drift mu
equals the risk-free rate r; that is the default here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import ValidationError

__all__ = [
    "ModelParams",
    "TimeGrid",
    "PathSet",
    "GaussianLaw",
    "HittingTime",
    "HitFrequency",
    "SeedStreams",
    "validate_params",
    "exact_marginal",
    "simulate_paths",
    "first_hitting_time",
    "hitting_probability",
    "hitting_frequency",
]

_MAX_SEED = 1 << 64


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the additive price process.

    Parameters
    ----------
    x0 : float
        Initial price. Negative values are allowed; the additive model does
        not confine prices to the positive axis.
    r : float
        Risk-free rate per unit time. Also the drift unless overridden.
    sigma : float
        Volatility in price units per sqrt(unit time). Must be >= 0.
    drift : float, optional
        Real-world drift mu. Defaults to r (risk-neutral). Any other value
        requires ``exploratory_drift=True``.
    exploratory_drift : bool
        Permit drift != r for exploratory runs only.
    """

    x0: float
    r: float
    sigma: float
    drift: float | None = None
    exploratory_drift: bool = False

    @property
    def mu(self) -> float:
        """Effective drift: r unless an exploratory drift was supplied."""
        return self.r if self.drift is None else self.drift


def validate_params(p: ModelParams) -> ModelParams:
    """Return ``p`` unchanged if its invariants hold, else raise ValidationError."""
    for name in ("x0", "r", "sigma"):
        if not math.isfinite(getattr(p, name)):
            raise ValidationError(f"{name} must be finite, got {getattr(p, name)!r}")
    if p.drift is not None and not math.isfinite(p.drift):
        raise ValidationError(f"drift must be finite, got {p.drift!r}")
    if p.sigma < 0:
        raise ValidationError(f"sigma must be >= 0, got {p.sigma!r}")
    if p.drift is not None and p.drift != p.r and not p.exploratory_drift:
        raise ValidationError(
            "drift must equal r under no-arbitrage; set exploratory_drift=True to override"
        )
    return p


@dataclass(frozen=True)
class GaussianLaw:
    """Normal law with the given mean and variance."""

    mean: float
    variance: float

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


def exact_marginal(p: ModelParams, t: float) -> GaussianLaw:
    """Exact law of X(t): Gaussian with mean x0 + mu*t and variance sigma^2*t."""
    validate_params(p)
    if t < 0:
        raise ValidationError(f"t must be >= 0, got {t!r}")
    return GaussianLaw(mean=p.x0 + p.mu * t, variance=p.sigma * p.sigma * t)


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing observation times starting exactly at 0."""

    times: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or times.size < 2:
            raise ValidationError("times must be a 1-d grid with at least two points")
        if times[0] != 0.0:
            raise ValidationError(f"times must start exactly at 0, got {times[0]!r}")
        if not np.all(np.diff(times) > 0):
            raise ValidationError("times must be strictly increasing")
        if not np.all(np.isfinite(times)):
            raise ValidationError("times must be finite")
        object.__setattr__(self, "times", times)

    @classmethod
    def regular(cls, t_end: float, n_steps: int) -> "TimeGrid":
        """Uniform grid of ``n_steps`` steps on [0, t_end]."""
        if n_steps < 1:
            raise ValidationError(f"n_steps must be >= 1, got {n_steps!r}")
        return cls(np.linspace(0.0, float(t_end), int(n_steps) + 1))

    @property
    def n_times(self) -> int:
        return self.times.size

    @property
    def steps(self) -> np.ndarray:
        return np.diff(self.times)

    @property
    def t_end(self) -> float:
        return float(self.times[-1])


class SeedStreams:
    """Per-index deterministic substreams of one master seed.

    Stream ``i`` draws from a counter-based generator whose counter is
    pre-positioned at block ``i`` (bit-identical to
    ``Philox(key=seed, counter=i << 128)``). Values therefore depend only on
    (seed, index), never on how many streams exist or the order in which they
    are consumed, which makes chunked or parallel sampling reproducible.
    """

    def __init__(self, seed: int):
        if not (0 <= int(seed) < _MAX_SEED):
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self._bit_gen = np.random.Philox(key=int(seed))
        self._gen = np.random.Generator(self._bit_gen)
        self._key = self._bit_gen.state["state"]["key"]

    def generator(self, index: int) -> np.random.Generator:
        """Generator positioned at the start of substream ``index`` (< 2^64).

        The same generator object is repositioned on every call, so finish
        drawing from one substream before requesting the next.
        """
        self._bit_gen.state = {
            "bit_generator": "Philox",
            "state": {
                "counter": np.array([0, 0, index, 0], dtype=np.uint64),
                "key": self._key,
            },
            "buffer": np.zeros(4, dtype=np.uint64),
            "buffer_pos": 4,
            "has_uint32": 0,
            "uinteger": 0,
        }
        return self._gen


@dataclass(frozen=True)
class PathSet:
    """Simulated trajectories: one row per path, one column per grid time."""

    grid: TimeGrid
    values: np.ndarray
    seed: int

    @property
    def n_paths(self) -> int:
        return self.values.shape[0]

    def path(self, i: int) -> np.ndarray:
        return self.values[i]

    def write_csv(self, fileobj, precision: int = 15) -> None:
        """Write ``t,path_0,path_1,...`` with one row per grid time."""
        header = "t," + ",".join(f"path_{i}" for i in range(self.n_paths))
        fileobj.write(header + "\n")
        fmt = f".{int(precision)}g"
        for j, t in enumerate(self.grid.times):
            row = [format(t, fmt)] + [format(v, fmt) for v in self.values[:, j]]
            fileobj.write(",".join(row) + "\n")


def _fill_noise(streams: SeedStreams, indices: range, scale: np.ndarray, out: np.ndarray) -> None:
    """Fill ``out`` rows with cumulative noise sum(sigma*sqrt(dt)*Z) per substream."""
    for row, idx in enumerate(indices):
        z = streams.generator(idx).standard_normal(scale.size)
        np.cumsum(scale * z, out=out[row, :])


def simulate_paths(p: ModelParams, grid: TimeGrid, n_paths: int, seed: int) -> PathSet:
    """Simulate exact-increment paths of the additive model.

    Each increment X(t_{i+1}) - X(t_i) is drawn exactly from
    N(mu*dt, sigma^2*dt); there is no time-stepping bias. Path ``i`` consumes
    only substream ``i`` of ``seed``, so the output is a pure function of
    (params, grid, n_paths, seed) regardless of chunking or parallelism, and
    the first k rows coincide with those of any larger run.

    Parameters
    ----------
    p : ModelParams
    grid : TimeGrid
    n_paths : int
        Number of trajectories, >= 1.
    seed : int
        Master seed (64-bit unsigned).

    Returns
    -------
    PathSet
    """
    validate_params(p)
    if n_paths < 1:
        raise ValidationError(f"n_paths must be >= 1, got {n_paths!r}")
    streams = SeedStreams(seed)
    scale = p.sigma * np.sqrt(grid.steps)
    values = np.empty((n_paths, grid.n_times))
    values[:, 0] = p.x0
    _fill_noise(streams, range(n_paths), scale, values[:, 1:])
    # Drift enters through the exact line x0 + mu*t rather than a cumulative
    # sum of mu*dt, so sigma = 0 paths are exactly linear.
    values[:, 1:] += (p.x0 + p.mu * grid.times[1:])[None, :]
    return PathSet(grid=grid, values=values, seed=int(seed))


@dataclass(frozen=True)
class HittingTime:
    """First grid time at which a path reaches a level; absent when it never does."""

    value: float | None

    @property
    def hit(self) -> bool:
        return self.value is not None


def first_hitting_time(path: np.ndarray, grid: TimeGrid, level: float) -> HittingTime:
    """First grid time at which the path is at or beyond ``level``.

    A path starting below the level is monitored for up-crossings (value >=
    level), one starting above for down-crossings (value <= level); starting
    exactly at the level hits at time 0. Only values up to the returned time
    are inspected; crossings between grid points are not interpolated.
    """
    values = np.asarray(path, dtype=float)
    if values.shape != grid.times.shape:
        raise ValidationError(
            f"path has {values.size} values but the grid has {grid.n_times} times"
        )
    if values[0] < level:
        mask = values >= level
    else:
        mask = values <= level
    if not mask.any():
        return HittingTime(value=None)
    return HittingTime(value=float(grid.times[int(np.argmax(mask))]))


def hitting_probability(p: ModelParams, level: float, t: float) -> float:
    """Exact P(tau <= t) for the first passage of the additive model to ``level``.

    Closed form for arithmetic Brownian motion with drift mu: for a level
    above the start, with d = level - x0,

        P = Phi((-d + mu*t)/(sigma*sqrt(t)))
            + exp(2*mu*d/sigma^2) * Phi((-d - mu*t)/(sigma*sqrt(t)))

    and the mirrored expression for a level below the start. Serves as the
    independent oracle for Monte Carlo hitting frequencies. With sigma = 0
    the crossing is deterministic and the probability is 0 or 1.
    """
    validate_params(p)
    if t <= 0:
        raise ValidationError(f"t must be > 0, got {t!r}")
    if level == p.x0:
        raise ValidationError("level must differ from x0; the path starts on the level")
    mu = p.mu
    if p.sigma == 0.0:
        if mu == 0.0:
            return 0.0
        crossing = (level - p.x0) / mu
        return 1.0 if 0.0 < crossing <= t else 0.0
    d = abs(level - p.x0)
    drift = mu if level > p.x0 else -mu
    sig_sqrt_t = p.sigma * math.sqrt(t)
    # exp * cdf evaluated in log space: the exponential factor alone can
    # overflow for strong drift even though the product is a probability.
    term1 = norm.cdf((-d + drift * t) / sig_sqrt_t)
    log_term2 = 2.0 * drift * d / (p.sigma * p.sigma) + norm.logcdf(
        (-d - drift * t) / sig_sqrt_t
    )
    prob = term1 + math.exp(log_term2)
    return min(max(prob, 0.0), 1.0)


@dataclass(frozen=True)
class HitFrequency:
    """Monte Carlo estimate of P(tau <= t_end) on a grid."""

    n_paths: int
    n_hits: int
    frequency: float
    standard_error: float


def hitting_frequency(
    p: ModelParams,
    level: float,
    grid: TimeGrid,
    n_paths: int,
    seed: int,
    chunk_paths: int = 8192,
) -> HitFrequency:
    """Fraction of simulated paths that reach ``level`` by the end of the grid.

    Paths are generated in chunks to bound memory; the per-path substreams
    make the result identical to simulating all paths at once.
    """
    validate_params(p)
    if n_paths < 1:
        raise ValidationError(f"n_paths must be >= 1, got {n_paths!r}")
    streams = SeedStreams(seed)
    scale = p.sigma * np.sqrt(grid.steps)
    base = p.x0 + p.mu * grid.times[1:]
    up = p.x0 < level
    n_hits = 0
    buf = np.empty((min(chunk_paths, n_paths), grid.n_times - 1))
    for start in range(0, n_paths, chunk_paths):
        rows = range(start, min(start + chunk_paths, n_paths))
        block = buf[: len(rows)]
        _fill_noise(streams, rows, scale, block)
        block += base[None, :]
        if up:
            hit = (block >= level).any(axis=1) | (p.x0 >= level)
        else:
            hit = (block <= level).any(axis=1) | (p.x0 <= level)
        n_hits += int(hit.sum())
    freq = n_hits / n_paths
    se = math.sqrt(freq * (1.0 - freq) / n_paths)
    return HitFrequency(n_paths=n_paths, n_hits=n_hits, frequency=freq, standard_error=se)
