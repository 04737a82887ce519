"""Hitting events and their moments.

Z_n(I) fires when the Brownian value at an interval's right endpoint lands in
the interval's exact f-range; Y_n(I) fires when the (bridge-refined) path
crosses the diagonal of the rectangle I x f(I).  An exact Gaussian oracle
covers all Z-quantities at small levels; Monte Carlo with batch-means errors
covers the rest.  Replicate streams are counter-based and share-nothing, so
partial results merge in any order.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.special import ndtr, ndtri
from scipy.stats import qmc

from .brownian import (
    STREAM_BRIDGE,
    STREAM_PATH,
    STREAM_QMC,
    Generator,
    PathSample,
    Philox,
    derive_key,
    sample_values,
)
from .bvn import rectangle_prob
from .cantor import CantorFunction, build_tree
from .errors import GridMisaligned, OracleCapExceeded, ZeroSecondMoment
from .sequences import SequenceSpec

ORACLE_MAX_INTERVALS = 256  # pairwise bivariate integrals stay under ~33k
_CHUNK_PATH_BUDGET = 1 << 15  # paths per bridge chunk scale as budget // N


@dataclass(frozen=True)
class EventGrid:
    """Level-n endpoint grid with index maps into the time axis."""

    level: int
    k: int
    times: np.ndarray  # starts at 0, then all level-n endpoints
    left_index: np.ndarray
    right_index: np.ndarray
    f_left: np.ndarray
    f_right: np.ndarray
    b_n: float

    @property
    def n_intervals(self) -> int:
        return int(self.left_index.size)


def build_grid(cf: CantorFunction, n: int) -> EventGrid:
    """Time grid holding every level-n endpoint (prefixed with t = 0)."""
    lefts, rights = cf.endpoints_exact(n)
    exact_times = sorted(set(lefts) | set(rights))
    times = np.array([0.0] + [float(t) for t in exact_times])
    if not np.all(np.diff(times) > 0):
        raise GridMisaligned(
            f"level-{n} endpoints collide in double precision; reduce the depth"
        )
    index = {t: i + 1 for i, t in enumerate(exact_times)}
    k = cf.k
    count = k**n
    f_left = np.arange(count, dtype=np.float64) / count
    f_right = (np.arange(count, dtype=np.float64) + 1.0) / count
    return EventGrid(
        level=n,
        k=k,
        times=times,
        left_index=np.array([index[t] for t in lefts], dtype=np.intp),
        right_index=np.array([index[t] for t in rights], dtype=np.intp),
        f_left=f_left,
        f_right=f_right,
        b_n=float(cf.b[n]),
    )


@dataclass(frozen=True)
class EventOutcome:
    """Per-interval indicator bits for one replicate path."""

    level: int
    z_indicators: Optional[np.ndarray]
    y_indicators: Optional[np.ndarray]
    replicate: int


def _path_indices(path: PathSample, times: np.ndarray) -> np.ndarray:
    grid_times = path.grid.times
    idx = np.searchsorted(grid_times, times)
    ok = (idx < grid_times.size) & (grid_times[np.minimum(idx, grid_times.size - 1)] == times)
    if not np.all(ok):
        raise GridMisaligned("path grid does not contain the required endpoints")
    return idx


def _level_f_ranges(k: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    count = k**n
    grid = np.arange(count, dtype=np.float64)
    return grid / count, (grid + 1.0) / count


def eval_Z(cf: CantorFunction, path: PathSample, n: int) -> EventOutcome:
    """Z indicators: f(r) <= B(s) <= f(s) at each level-n interval [r, s]."""
    _, rights = cf.endpoints_exact(n)
    s_times = np.array([float(t) for t in rights])
    idx = _path_indices(path, s_times)
    b_at_s = path.values[idx]
    f_left, f_right = _level_f_ranges(cf.k, n)
    z = (b_at_s >= f_left) & (b_at_s <= f_right)
    return EventOutcome(level=n, z_indicators=z, y_indicators=None, replicate=path.seed)


def _bridge_rounds(refine_depth: int) -> int:
    if refine_depth < 1 or refine_depth & (refine_depth - 1):
        raise ValueError("refine_depth must be a power of two")
    return refine_depth.bit_length() - 1


def _bridge_crossing(
    u_left: np.ndarray,
    u_right: np.ndarray,
    length: float,
    refine_depth: int,
    key_for_round,
) -> np.ndarray:
    """Sign-change detection of a bridge against 0 on a dyadic refinement.

    u_left/u_right are the endpoint gaps B - diagonal, shape (paths, intervals).
    Midpoints are filled by dyadic bisection, one keyed stream per round, so
    coarser refinements are exact prefixes of finer ones.
    """
    rounds = _bridge_rounds(refine_depth)
    paths, n_int = u_left.shape
    q = refine_depth
    v = np.empty((q + 1, paths, n_int), dtype=np.float64)
    v[0] = u_left
    v[q] = u_right
    for r in range(1, rounds + 1):
        off = q >> r
        mids = np.arange(off, q, 2 * off)
        sigma = math.sqrt(length / (1 << (r + 1)))
        rng = Generator(Philox(key=key_for_round(r)))
        noise = rng.standard_normal((mids.size, paths, n_int))
        v[mids] = 0.5 * (v[mids - off] + v[mids + off]) + sigma * noise
    return (v.min(axis=0) <= 0.0) & (v.max(axis=0) >= 0.0)


def eval_Y(
    cf: CantorFunction, path: PathSample, n: int, refine_depth: int = 128
) -> EventOutcome:
    """Y indicators: the refined path crosses the diagonal of I x f(I).

    Bridge draws are keyed by (path.seed, level, interval round), so the
    outcome is deterministic in (path, refine_depth).
    """
    lefts, rights = cf.endpoints_exact(n)
    r_times = np.array([float(t) for t in lefts])
    s_times = np.array([float(t) for t in rights])
    ir = _path_indices(path, r_times)
    is_ = _path_indices(path, s_times)
    f_left, f_right = _level_f_ranges(cf.k, n)
    u_left = (path.values[ir] - f_left)[None, :]
    u_right = (path.values[is_] - f_right)[None, :]

    def key_for_round(r: int) -> int:
        return derive_key(path.seed, STREAM_BRIDGE, n, 0, 0, r)

    y = _bridge_crossing(u_left, u_right, float(cf.b[n]), refine_depth, key_for_round)[0]
    return EventOutcome(level=n, z_indicators=None, y_indicators=y, replicate=path.seed)


def crossing_probability(u_left, u_right, length):
    """Exact probability that a Brownian bridge with these endpoint gaps hits 0.

    1 on a sign change; exp(-2 u_l u_r / length) when both gaps share a sign.
    Used as the independent oracle for the refinement detector.
    """
    u_left = np.asarray(u_left, dtype=np.float64)
    u_right = np.asarray(u_right, dtype=np.float64)
    prod = u_left * u_right
    with np.errstate(over="ignore"):
        p = np.exp(-2.0 * prod / length)
    return np.where(prod <= 0.0, 1.0, np.minimum(p, 1.0))


# ---------------------------------------------------------------------------
# Exact Gaussian oracle


@dataclass(frozen=True)
class ZOracle:
    """Exact per-interval and pairwise Z probabilities at one level."""

    level: int
    per_interval: np.ndarray
    pairs_i: np.ndarray
    pairs_j: np.ndarray
    p_joint: np.ndarray
    pair_ancestor_level: np.ndarray
    mean: float
    second_moment: float

    def conditional(self) -> np.ndarray:
        """P(Z(J) | Z(I)) for every stored pair I < J."""
        return self.p_joint / self.per_interval[self.pairs_i]


def exact_Z_oracle(cf: CantorFunction, n: int, cap: int = ORACLE_MAX_INTERVALS) -> ZOracle:
    """Univariate and bivariate Gaussian probabilities for all Z events."""
    k = cf.k
    count = k**n
    if count > cap:
        raise OracleCapExceeded(f"{count} intervals exceed the oracle cap {cap}")
    _, rights = cf.endpoints_exact(n)
    s = np.array([float(t) for t in rights])
    f_left, f_right = _level_f_ranges(k, n)
    root_s = np.sqrt(s)
    per_interval = ndtr(f_right / root_s) - ndtr(f_left / root_s)

    ii, jj = np.triu_indices(count, k=1)
    rho = np.sqrt(s[ii] / s[jj])
    p_joint = rectangle_prob(
        f_left[ii] / root_s[ii],
        f_right[ii] / root_s[ii],
        f_left[jj] / root_s[jj],
        f_right[jj] / root_s[jj],
        rho,
    )
    ancestor = np.empty(ii.size, dtype=np.intp)
    for idx in range(ii.size):
        a, b = int(ii[idx]), int(jj[idx])
        ell = n
        while a != b:
            a //= k
            b //= k
            ell -= 1
        ancestor[idx] = ell
    mean = float(per_interval.sum())
    second = mean + 2.0 * float(p_joint.sum())
    return ZOracle(
        level=n,
        per_interval=per_interval,
        pairs_i=ii,
        pairs_j=jj,
        p_joint=p_joint,
        pair_ancestor_level=ancestor,
        mean=mean,
        second_moment=second,
    )


def second_moment_decomposition_check(oracle: ZOracle) -> float:
    """Discrepancy between two evaluation orders of the second moment.

    Route A sums joint probabilities pairwise in address order; route B walks
    the conditional-probability decomposition grouped by common-ancestor level.
    """
    route_a = float(oracle.per_interval.sum()) + 2.0 * float(oracle.p_joint.sum())
    p_i = oracle.per_interval[oracle.pairs_i]
    cond = oracle.p_joint / p_i
    route_b = float(oracle.per_interval.sum())
    for ell in range(oracle.level):
        mask = oracle.pair_ancestor_level == ell
        route_b += 2.0 * float(np.sum(p_i[mask] * cond[mask]))
    per_pair = float(np.max(np.abs(p_i * cond - oracle.p_joint))) if cond.size else 0.0
    return max(abs(route_a - route_b), per_pair)


# ---------------------------------------------------------------------------
# Monte Carlo moments


@dataclass
class MomentReport:
    """Per-level moment estimates with batch-means standard errors."""

    spec_id: str
    k: int
    n: int
    replicates: int
    seed: int
    mean_Z: float
    se_mean_Z: float
    second_moment_Z: float
    se_second_moment_Z: float
    prob_Z_positive: float
    se_prob_Z_positive: float
    mean_Z_exact: Optional[float] = None
    second_moment_Z_exact: Optional[float] = None
    pz_lower_bound: Optional[float] = None
    pz_se: Optional[float] = None
    mean_Y: Optional[float] = None
    se_mean_Y: Optional[float] = None
    prob_Y_positive: Optional[float] = None
    se_prob_Y_positive: Optional[float] = None
    refine_depth: Optional[int] = None
    per_interval_Z: Optional[np.ndarray] = None
    per_interval_Y: Optional[np.ndarray] = None
    batch_mean_Z: Optional[np.ndarray] = None
    batch_second_Z: Optional[np.ndarray] = None


@dataclass(frozen=True)
class PZBound:
    value: float
    se: float


def paley_zygmund(report: MomentReport) -> PZBound:
    """(E Z)^2 / E(Z^2): oracle values when present, else MC with delta-method SE."""
    if report.mean_Z_exact is not None and report.second_moment_Z_exact is not None:
        if report.second_moment_Z_exact <= 0.0:
            raise ZeroSecondMoment("oracle second moment is zero")
        return PZBound(report.mean_Z_exact**2 / report.second_moment_Z_exact, 0.0)
    m, s = report.mean_Z, report.second_moment_Z
    if s <= 0.0:
        raise ZeroSecondMoment("estimated second moment is zero")
    value = m * m / s
    se = 0.0
    if report.batch_mean_Z is not None and report.batch_second_Z is not None:
        b = report.batch_mean_Z.size
        cov = np.cov(np.vstack([report.batch_mean_Z, report.batch_second_Z]), ddof=1)
        grad = np.array([2.0 * m / s, -(m * m) / (s * s)])
        var = float(grad @ cov @ grad) / b
        se = math.sqrt(max(var, 0.0))
    return PZBound(value, se)


def _batch_sizes(replicates: int, batches: int) -> list[int]:
    batches = min(batches, replicates)
    base, extra = divmod(replicates, batches)
    return [base + (1 if i < extra else 0) for i in range(batches)]


def _simulate_batches(
    spec: SequenceSpec,
    depth: int,
    n: int,
    batch_ids: Sequence[int],
    sizes: Sequence[int],
    seed: int,
    refine_depth: int,
    with_y: bool,
) -> dict:
    cf = build_tree(spec, depth)
    grid = build_grid(cf, n)
    n_int = grid.n_intervals
    chunk_paths = max(1, _CHUNK_PATH_BUDGET // n_int)
    out = {
        "z1": np.zeros(len(batch_ids)),
        "z2": np.zeros(len(batch_ids)),
        "zpos": np.zeros(len(batch_ids)),
        "y1": np.zeros(len(batch_ids)),
        "ypos": np.zeros(len(batch_ids)),
        "z_int": np.zeros(n_int),
        "y_int": np.zeros(n_int),
    }
    for row, b in enumerate(batch_ids):
        size = sizes[b]
        values = sample_values(grid.times, size, derive_key(seed, STREAM_PATH, n, b))
        b_at_s = values[:, grid.right_index]
        z_ind = (b_at_s >= grid.f_left) & (b_at_s <= grid.f_right)
        counts = z_ind.sum(axis=1)
        out["z1"][row] = counts.mean()
        out["z2"][row] = np.mean(counts.astype(np.float64) ** 2)
        out["zpos"][row] = np.mean(counts > 0)
        out["z_int"] += z_ind.sum(axis=0)
        if with_y:
            u_left_all = values[:, grid.left_index] - grid.f_left
            u_right_all = b_at_s - grid.f_right
            y_any = np.zeros(size, dtype=bool)
            y_count = np.zeros(size, dtype=np.float64)
            for chunk, lo in enumerate(range(0, size, chunk_paths)):
                hi = min(lo + chunk_paths, size)

                def key_for_round(r: int, _b=b, _c=chunk) -> int:
                    return derive_key(seed, STREAM_BRIDGE, n, _b, _c, r)

                y_ind = _bridge_crossing(
                    u_left_all[lo:hi], u_right_all[lo:hi], grid.b_n, refine_depth, key_for_round
                )
                y_any[lo:hi] = y_ind.any(axis=1)
                y_count[lo:hi] = y_ind.sum(axis=1)
                out["y_int"] += y_ind.sum(axis=0)
            out["y1"][row] = y_count.mean()
            out["ypos"][row] = np.mean(y_any)
    return out


def _se(batch_values: np.ndarray) -> float:
    if batch_values.size < 2:
        return float("nan")
    return float(np.std(batch_values, ddof=1) / math.sqrt(batch_values.size))


def simulate_moments(
    cf: CantorFunction,
    n: int,
    replicates: int,
    seed: int,
    refine_depth: int = 128,
    with_y: bool = True,
    oracle: Optional[ZOracle] = None,
    batches: int = 100,
    workers: int = 1,
) -> MomentReport:
    """Monte Carlo Z/Y moments at level n with batch-means standard errors."""
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    _bridge_rounds(refine_depth)
    sizes = _batch_sizes(replicates, batches)
    n_batches = len(sizes)
    ids = list(range(n_batches))
    if workers > 1 and n_batches > 1:
        slices = np.array_split(np.array(ids), min(workers, n_batches))
        args = [
            (cf.spec, cf.depth, n, [int(i) for i in sl], sizes, seed, refine_depth, with_y)
            for sl in slices
            if sl.size
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_simulate_batches_star, args))
        merged = {
            key: np.concatenate([p[key] for p in parts])
            for key in ("z1", "z2", "zpos", "y1", "ypos")
        }
        merged["z_int"] = np.sum([p["z_int"] for p in parts], axis=0)
        merged["y_int"] = np.sum([p["y_int"] for p in parts], axis=0)
    else:
        merged = _simulate_batches(cf.spec, cf.depth, n, ids, sizes, seed, refine_depth, with_y)

    weights = np.array(sizes, dtype=np.float64) / replicates
    report = MomentReport(
        spec_id=cf.spec.label,
        k=cf.k,
        n=n,
        replicates=replicates,
        seed=seed,
        mean_Z=float(merged["z1"] @ weights),
        se_mean_Z=_se(merged["z1"]),
        second_moment_Z=float(merged["z2"] @ weights),
        se_second_moment_Z=_se(merged["z2"]),
        prob_Z_positive=float(merged["zpos"] @ weights),
        se_prob_Z_positive=_se(merged["zpos"]),
        refine_depth=refine_depth if with_y else None,
        per_interval_Z=merged["z_int"] / replicates,
        batch_mean_Z=merged["z1"],
        batch_second_Z=merged["z2"],
    )
    if with_y:
        report.mean_Y = float(merged["y1"] @ weights)
        report.se_mean_Y = _se(merged["y1"])
        report.prob_Y_positive = float(merged["ypos"] @ weights)
        report.se_prob_Y_positive = _se(merged["ypos"])
        report.per_interval_Y = merged["y_int"] / replicates
    if oracle is not None:
        report.mean_Z_exact = oracle.mean
        report.second_moment_Z_exact = oracle.second_moment
    pz = paley_zygmund(report)
    report.pz_lower_bound = pz.value
    report.pz_se = pz.se
    return report


def _simulate_batches_star(args) -> dict:
    return _simulate_batches(*args)


def rb_y_probability(
    cf: CantorFunction, n: int, replicates: int, seed: int, batches: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """Rao-Blackwellized P(Y_n(I)) per interval via the exact bridge formula.

    Averages the closed-form conditional crossing probability over endpoint
    samples; unbiased, and independent of the refinement detector.
    """
    grid = build_grid(cf, n)
    sizes = _batch_sizes(replicates, batches)
    batch_means = np.zeros((len(sizes), grid.n_intervals))
    for b, size in enumerate(sizes):
        values = sample_values(grid.times, size, derive_key(seed, STREAM_PATH, n, b))
        u_left = values[:, grid.left_index] - grid.f_left
        u_right = values[:, grid.right_index] - grid.f_right
        batch_means[b] = crossing_probability(u_left, u_right, grid.b_n).mean(axis=0)
    weights = np.array(sizes, dtype=np.float64) / replicates
    estimate = weights @ batch_means
    se = np.std(batch_means, axis=0, ddof=1) / math.sqrt(len(sizes))
    return estimate, se


# ---------------------------------------------------------------------------
# Zero-in-set detector and its quasi-Monte Carlo reference


@dataclass(frozen=True)
class LevelFiring:
    level: int
    fired_count: int
    first_address: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class DetectorResult:
    z_positive: bool
    deepest_level: Optional[int]
    witness_address: Optional[tuple[int, ...]]
    per_level: tuple[LevelFiring, ...]


def _leaf_address(index: int, k: int, n: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n):
        digits.append(index % k)
        index //= k
    return tuple(reversed(digits))


def zero_in_cantor_detector(cf: CantorFunction, path: PathSample, n: int) -> DetectorResult:
    """Z firing ladder across levels m <= n: a finite proxy for the limsup event."""
    _, rights = cf.endpoints_exact(n)
    s_times = np.array([float(t) for t in rights])
    idx = _path_indices(path, s_times)
    b_at_leaf_s = path.values[idx]
    k = cf.k
    per_level = []
    deepest = None
    witness = None
    for m in range(1, n + 1):
        count_m = k**m
        stride = k ** (n - m)
        b_at_s = b_at_leaf_s[stride - 1 :: stride]
        f_left, f_right = _level_f_ranges(k, m)
        fired = (b_at_s >= f_left) & (b_at_s <= f_right)
        total = int(fired.sum())
        first = None
        if total:
            first = _leaf_address(int(np.argmax(fired)), k, m)
            deepest = m
            witness = first
        per_level.append(LevelFiring(m, total, first))
    return DetectorResult(
        z_positive=per_level[-1].fired_count > 0 if per_level else False,
        deepest_level=deepest,
        witness_address=witness,
        per_level=tuple(per_level),
    )


def qmc_z_positive(
    cf: CantorFunction, n: int, log2_points: int, seed: int, block_log2: int = 16
) -> float:
    """Scrambled-Sobol reference estimate of P(Z_{b_n} > 0)."""
    grid = build_grid(cf, n)
    s = grid.times[grid.right_index]
    order = np.argsort(s)
    steps = np.diff(np.concatenate([[0.0], s[order]]))
    dim = s.size
    sobol = qmc.Sobol(
        d=dim, scramble=True, seed=Generator(Philox(key=derive_key(seed, STREAM_QMC, n)))
    )
    total = 1 << log2_points
    block = 1 << min(block_log2, log2_points)
    tiny = np.finfo(np.float64).tiny
    hits = 0
    for _ in range(total // block):
        u = sobol.random(block)
        z = ndtri(np.clip(u, tiny, 1.0 - 1e-16))
        b_sorted = np.cumsum(z * np.sqrt(steps), axis=1)
        b_at_s = np.empty_like(b_sorted)
        b_at_s[:, order] = b_sorted
        fired = (b_at_s >= grid.f_left) & (b_at_s <= grid.f_right)
        hits += int(fired.any(axis=1).sum())
    return hits / total


# ---------------------------------------------------------------------------
# Diagonal moment scaling table


@dataclass(frozen=True)
class DiagonalRow:
    n: int
    a_n: float
    p_y_mean: float
    mean_Y: float
    se_mean_Y: float
    scale: float  # max(a_n, 1): the predicted E(Y) growth factor
    c_hat: float  # mean_Y / scale


@dataclass(frozen=True)
class DiagonalBoundsTable:
    rows: tuple[DiagonalRow, ...]
    c_lo: float
    c_hi: float


def diagonal_moment_bounds_check(
    cf: CantorFunction,
    n_range: Iterable[int],
    replicates: int,
    seed: int,
    refine_depth: int = 128,
    workers: int = 1,
) -> DiagonalBoundsTable:
    """Estimate E(Y_{b_n}) across levels and fit the predicted scaling constant.

    The predicted regime is E(Y) ~ C when a_n <= 1 and E(Y) ~ C a_n when
    a_n > 1; c_hat = E(Y)/max(a_n, 1) should stay inside one band.
    """
    rows = []
    for n in n_range:
        rep = simulate_moments(
            cf, n, replicates, seed, refine_depth=refine_depth, with_y=True, workers=workers
        )
        a_n = cf.scales[n].a
        scale = max(a_n, 1.0)
        rows.append(
            DiagonalRow(
                n=n,
                a_n=a_n,
                p_y_mean=rep.mean_Y / cf.k**n,
                mean_Y=rep.mean_Y,
                se_mean_Y=rep.se_mean_Y,
                scale=scale,
                c_hat=rep.mean_Y / scale,
            )
        )
    c_values = [r.c_hat for r in rows]
    return DiagonalBoundsTable(rows=tuple(rows), c_lo=min(c_values), c_hi=max(c_values))


# ---------------------------------------------------------------------------
# CSV emission

MOMENTS_HEADER = [
    "spec_id",
    "k",
    "n",
    "mean_Z",
    "se_mean_Z",
    "mean_Z_exact",
    "m2_Z",
    "m2_Z_exact",
    "pz_bound",
    "p_Z_pos",
    "se_p_Z_pos",
    "mean_Y",
    "se_mean_Y",
    "p_Y_pos",
    "se_p_Y_pos",
    "replicates",
    "seed",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_moments_csv(reports: Iterable[MomentReport], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(MOMENTS_HEADER)
        for r in reports:
            w.writerow(
                [
                    r.spec_id,
                    r.k,
                    r.n,
                    _cell(r.mean_Z),
                    _cell(r.se_mean_Z),
                    _cell(r.mean_Z_exact),
                    _cell(r.second_moment_Z),
                    _cell(r.second_moment_Z_exact),
                    _cell(r.pz_lower_bound),
                    _cell(r.prob_Z_positive),
                    _cell(r.se_prob_Z_positive),
                    _cell(r.mean_Y),
                    _cell(r.se_mean_Y),
                    _cell(r.prob_Y_positive),
                    _cell(r.se_prob_Y_positive),
                    r.replicates,
                    r.seed,
                ]
            )
