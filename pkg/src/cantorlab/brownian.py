"""Seed-reproducible Brownian path sampling and bridge refinement.

All randomness flows through counter-based Philox generators whose keys are
derived from a 64-bit master seed with splitmix64.  Streams are therefore
splittable: (seed, stream tag, level, batch, chunk, round) always maps to the
same draws, independent of scheduling or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .errors import TimesNotOnGrid, TimesOutsideSegment

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Stream tags keep independent purposes on disjoint key orbits.
STREAM_PATH = 0x70617468  # "path"
STREAM_BRIDGE = 0x62726467  # "brdg"
STREAM_QMC = 0x716D63  # "qmc"


def splitmix64(x: int) -> int:
    """One splitmix64 step; the published mixing function behind key derivation."""
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_key(seed: int, *tags: int) -> int:
    """Mix a master seed with integer tags into an independent Philox key."""
    key = splitmix64(seed & _MASK64)
    for tag in tags:
        key = splitmix64(key ^ (tag & _MASK64))
    return key


def generator(seed: int, *tags: int) -> Generator:
    return Generator(Philox(key=derive_key(seed, *tags)))


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing sampling times starting at 0."""

    times: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=np.float64)
        if times.ndim != 1 or times.size == 0:
            raise ValueError("time grid must be a nonempty 1-d array")
        if times[0] != 0.0:
            raise ValueError("time grid must start at 0")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("time grid must be strictly increasing")
        object.__setattr__(self, "times", times)

    def __len__(self) -> int:
        return int(self.times.size)

    def index_of(self, t: float) -> int:
        i = int(np.searchsorted(self.times, t))
        if i >= self.times.size or self.times[i] != t:
            raise TimesNotOnGrid(f"time {t!r} is not a grid point")
        return i


@dataclass(frozen=True)
class PathSample:
    """Brownian values on a time grid; (grid, seed) reproduce it bit for bit."""

    grid: TimeGrid
    values: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != self.grid.times.shape:
            raise ValueError("values and grid must have equal length")
        object.__setattr__(self, "values", values)


def sample_values(times: np.ndarray, n_paths: int, key: int) -> np.ndarray:
    """Matrix of Brownian values, one row per path, at the given times.

    times[0] must be 0; column 0 is identically 0.
    """
    times = np.asarray(times, dtype=np.float64)
    steps = np.diff(times)
    rng = Generator(Philox(key=key))
    z = rng.standard_normal((n_paths, steps.size))
    out = np.empty((n_paths, times.size), dtype=np.float64)
    out[:, 0] = 0.0
    np.cumsum(z * np.sqrt(steps), axis=1, out=out[:, 1:])
    return out


def sample_path(grid: TimeGrid, seed: int) -> PathSample:
    """Draw one Brownian path on the grid by independent Gaussian increments."""
    values = sample_values(grid.times, 1, derive_key(seed, STREAM_PATH))[0]
    return PathSample(grid=grid, values=values, seed=seed)


def refine_bridge(
    path: PathSample,
    segment: tuple[int, int],
    new_times: np.ndarray,
    seed: int,
) -> PathSample:
    """Insert bridge-law values strictly inside one grid segment.

    ``segment`` is a pair of adjacent grid indices (i, i+1).  Existing values
    are untouched; inserted values follow the Brownian bridge conditioned on
    the segment's endpoint values, deterministically in (path, seed).
    """
    i0, i1 = segment
    if i1 != i0 + 1:
        raise TimesOutsideSegment("segment must be a pair of adjacent grid indices")
    times = path.grid.times
    if not (0 <= i0 < i1 < times.size):
        raise TimesOutsideSegment("segment indices out of range")
    new_times = np.sort(np.asarray(new_times, dtype=np.float64))
    if new_times.size == 0:
        return path
    t0, t1 = times[i0], times[i1]
    if new_times[0] <= t0 or new_times[-1] >= t1:
        raise TimesOutsideSegment("refinement times must lie strictly inside the segment")
    if np.unique(new_times).size != new_times.size:
        raise TimesOutsideSegment("refinement times must be distinct")

    rng = generator(seed, STREAM_BRIDGE, i0)
    v = np.empty(new_times.size, dtype=np.float64)
    left_t, left_v = t0, path.values[i0]
    right_t, right_v = t1, path.values[i1]
    for j, t in enumerate(new_times):
        span = right_t - left_t
        frac = (t - left_t) / span
        mean = left_v + frac * (right_v - left_v)
        var = (t - left_t) * (right_t - t) / span
        v[j] = mean + np.sqrt(var) * rng.standard_normal()
        left_t, left_v = t, v[j]

    merged_t = np.concatenate([times[: i0 + 1], new_times, times[i1:]])
    merged_v = np.concatenate([path.values[: i0 + 1], v, path.values[i1:]])
    return PathSample(grid=TimeGrid(merged_t), values=merged_v, seed=path.seed)


def rescale_markov(path: PathSample, t1: float, t2: float) -> PathSample:
    """Rescale the path over [t1, t2] onto [0, 1].

    Returns the deterministic transform (t2-t1)^{-1/2} (B(t1 + (t2-t1) t) - B(t1))
    evaluated at the grid times inside [t1, t2].
    """
    if not t1 < t2:
        raise TimesNotOnGrid("need t1 < t2")
    i1 = path.grid.index_of(t1)
    i2 = path.grid.index_of(t2)
    span = t2 - t1
    taus = (path.grid.times[i1 : i2 + 1] - t1) / span
    values = (path.values[i1 : i2 + 1] - path.values[i1]) / np.sqrt(span)
    taus = taus.copy()
    taus[0] = 0.0
    values = values.copy()
    values[0] = 0.0
    return PathSample(grid=TimeGrid(taus), values=values, seed=path.seed)
