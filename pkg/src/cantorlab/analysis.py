"""Deterministic analytics: the S-function and its closed-form bound,
conditional-probability tables, balanced-interval censuses with the optimized
exponential Chebyshev bound, iterated-logarithm profiles at endpoints, the
cut-probability sweep, and the isolated-zero exclusion construction.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import erf, ndtr

from .brownian import STREAM_PATH, derive_key, sample_values
from .cantor import CantorFunction, sup_increment
from .errors import AnchorNotEndpoint, RegimeMismatch
from .events import _batch_sizes, _bridge_crossing, build_grid
from .sequences import SequenceSpec, derive_b, generate_a

_STREAM_BUDGET_BRIDGE = 0x6264_6272


# ---------------------------------------------------------------------------
# S(z) and the conditional-probability estimates


def S_function(z: float, terms: int = 64) -> float:
    """S(z) = z * sum_{k>=1} (k+1) exp(-(kz)^2/2), tail-certified.

    The partial sum is extended until a geometric tail bound drops below
    1e-15 relative to max(1, S).
    """
    if z <= 0:
        raise ValueError("z must be positive")
    total = 0.0
    start = 1
    count = max(terms, 8)
    while True:
        ks = np.arange(start, start + count, dtype=np.float64)
        total += float(np.sum((ks + 1.0) * np.exp(-((ks * z) ** 2) / 2.0)))
        k_next = start + count
        # (kz)^2/2 >= (Kz)^2/2 + K z^2 (k-K) gives a geometric majorant.
        q = math.exp(-k_next * z * z)
        if q < 1.0:
            tail = math.exp(-((k_next * z) ** 2) / 2.0) * (
                (k_next + 1.0) / (1.0 - q) + q / (1.0 - q) ** 2
            )
            if z * tail <= 1e-15 * max(1.0, z * total):
                break
        start = k_next
        count *= 2
    return z * total


def s_function_paper_bound(z: float) -> float:
    """The closed-form majorant e^{1/2} z^{-1} (z/(1-e^{-z}))^2 (2e^{-z}-e^{-2z})."""
    if z <= 0:
        raise ValueError("z must be positive")
    ez = math.exp(-z)
    return math.exp(0.5) * z * (2.0 * ez - ez * ez) / (1.0 - ez) ** 2


def comparison_factor(z):
    """(z/(1-e^{-z}))^2 (2 e^{-z} - e^{-2z}), the bounded factor in the majorant."""
    z = np.asarray(z, dtype=np.float64)
    ez = np.exp(-z)
    return (z / (1.0 - ez)) ** 2 * (2.0 * ez - ez * ez)


@lru_cache(maxsize=1)
def comparison_factor_supremum() -> tuple[float, float]:
    """Numeric supremum of the comparison factor on (0, 10]."""
    grid = np.linspace(1e-4, 10.0, 20001)
    values = comparison_factor(grid)
    i = int(np.argmax(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(lambda t: -float(comparison_factor(t)), bounds=(lo, hi), method="bounded")
    return float(res.x), float(-res.fun)


@dataclass(frozen=True)
class ConditionalSumBound:
    n: int
    ell: int
    z: float
    lhs: float  # 1 + S(z)/sqrt(2 pi eps): the summed conditional estimate
    rhs: float  # 1 + c2 a_l / 2^{l-n}: the simplified linear form
    c2: float


def conditional_sum_bound(spec: SequenceSpec, n: int, ell: int) -> ConditionalSumBound:
    """Both sides of the summed conditional-probability estimate at (n, l)."""
    if not 0 <= ell < n:
        raise ValueError("need 0 <= ell < n")
    scales = derive_b(spec, n)
    a_ell = scales[ell].a
    eps = spec.epsilon
    z = 2.0 ** (ell - n) / a_ell
    _, sup_g = comparison_factor_supremum()
    c2 = math.exp(0.5) * sup_g / math.sqrt(2.0 * math.pi * eps)
    lhs = 1.0 + S_function(z) / math.sqrt(2.0 * math.pi * eps)
    rhs = 1.0 + c2 / z
    return ConditionalSumBound(n=n, ell=ell, z=z, lhs=lhs, rhs=rhs, c2=c2)


def second_moment_rollup(spec: SequenceSpec, n: int) -> float:
    """2 sum_{l=0..n} (2^{-(n-l)} + c2 a_l): the second-moment majorant."""
    scales = derive_b(spec, n)
    _, sup_g = comparison_factor_supremum()
    c2 = math.exp(0.5) * sup_g / math.sqrt(2.0 * math.pi * spec.epsilon)
    return 2.0 * sum(2.0 ** -(n - ell) + c2 * scales[ell].a for ell in range(n + 1))


def easy_conditional_bounds(spec: SequenceSpec, n: int, ell: int) -> tuple[float, float]:
    """Bracketing quantities (b_l)^{-1/2} k^{-n} and (eps b_l)^{-1/2} k^{-n}."""
    if not 0 <= ell < n:
        raise ValueError("need 0 <= ell < n")
    scales = derive_b(spec, n)
    k = spec.branching
    lo = scales[ell].b ** -0.5 * k**-n
    return lo, lo / math.sqrt(spec.epsilon)


# ---------------------------------------------------------------------------
# Balanced-interval census


class CensusRule(enum.Enum):
    ZERO_FRACTION_THIRD = "zero_fraction_third"
    WEIGHTED_SUM = "weighted_sum"


@dataclass(frozen=True)
class CensusReport:
    n: int
    rule: CensusRule
    d_n: Optional[float]
    balanced_count: int
    unbalanced_count: int
    chebyshev_bound: float
    theta: float

    @property
    def unbalanced_fraction(self) -> float:
        return self.unbalanced_count / (self.balanced_count + self.unbalanced_count)


def _optimize_chebyshev(log_bound) -> tuple[float, float]:
    """Minimize a log-bound over theta on a log-spaced grid plus a local refine."""
    grid = np.logspace(-3, 3, 121)
    values = np.array([log_bound(t) for t in grid])
    i = int(np.argmin(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(log_bound, bounds=(lo, hi), method="bounded")
    if res.fun <= values[i]:
        return float(res.x), float(math.exp(res.fun))
    return float(grid[i]), float(math.exp(values[i]))


def _weight_fractions(spec: SequenceSpec, n: int) -> list[Fraction]:
    return [1 / Fraction(a) for a in generate_a(spec, n)]


def _weighted_unbalanced_count(weights: Sequence[Fraction]) -> tuple[int, Fraction]:
    """Exact #{v: sum v_i w_i > (1/2) sum w_i} by meet-in-the-middle."""
    n = len(weights)
    d_n = sum(weights) / 2
    half = n // 2
    left, right = weights[:half], weights[half:]

    def subset_sums(ws: Sequence[Fraction]) -> list[Fraction]:
        sums = [Fraction(0)]
        for w in ws:
            sums += [s + w for s in sums]
        return sums

    import bisect

    right_sums = sorted(subset_sums(right))
    count = 0
    for s in subset_sums(left):
        # strictly greater than d_n - s
        count += len(right_sums) - bisect.bisect_right(right_sums, d_n - s)
    return count, d_n


def census(spec: SequenceSpec, n: int, rule: CensusRule) -> CensusReport:
    """Exact balanced/unbalanced counts plus the optimized Chebyshev bound.

    ZeroFractionThird counts addresses with >= n/3 zeros by binomial tails;
    WeightedSum counts sum v_i/a_i <= d_n exactly in rational arithmetic by
    meet-in-the-middle (n <= 40).
    """
    total = 1 << n
    log2 = math.log(2.0)
    if rule is CensusRule.ZERO_FRACTION_THIRD:
        need = math.ceil(n / 3)
        unbalanced = sum(math.comb(n, z) for z in range(0, need)) if need > 0 else 0
        threshold = 2.0 * n / 3.0  # unbalanced means > 2n/3 ones

        def log_bound(theta: float) -> float:
            return -theta * threshold + n * (np.logaddexp(0.0, theta) - log2)

        theta, bound = _optimize_chebyshev(log_bound)
        d_n = None
    elif rule is CensusRule.WEIGHTED_SUM:
        if n > 40:
            raise ValueError("weighted census capped at n = 40")
        weights = _weight_fractions(spec, n)
        unbalanced, d_exact = _weighted_unbalanced_count(weights)
        d_n = float(d_exact)
        w = np.array([float(x) for x in weights])

        def log_bound(theta: float) -> float:
            return -theta * d_n + float(np.sum(np.logaddexp(0.0, theta * w))) - n * log2

        theta, bound = _optimize_chebyshev(log_bound)
    else:  # pragma: no cover
        raise ValueError(f"unknown rule {rule}")
    return CensusReport(
        n=n,
        rule=rule,
        d_n=d_n,
        balanced_count=total - unbalanced,
        unbalanced_count=unbalanced,
        chebyshev_bound=bound,
        theta=theta,
    )


# ---------------------------------------------------------------------------
# Conditional first-moment lower bound (balanced intervals)


@dataclass(frozen=True)
class FirstMomentBound:
    """Eq-style lower bound on E(Z | A_I) for one address, both prefactor variants.

    ``bound_pi`` follows the first display (second-branch prefactor
    1/(2 sqrt(2 pi) a_l)); ``bound_eps`` follows the second display
    (1/(2 sqrt(2 eps) a_l) with the 5/(4 sqrt(2 pi) a_l) exponent).  The
    integral form is the pre-bound Gaussian integral both descend from.
    """

    n: int
    address: tuple[int, ...]
    bound_pi: float
    bound_eps: float
    integral_form: float


def _first_moment_terms(spec: SequenceSpec, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-level contributions (pi-variant, eps-variant, integral) for l = 1..n-2."""
    scales = derive_b(spec, n)
    eps = spec.epsilon
    term_pi = np.zeros(n + 1)
    term_eps = np.zeros(n + 1)
    term_int = np.zeros(n + 1)
    for ell in range(1, n - 1):
        a = scales[ell].a
        q = 2.0 ** (ell - n)
        x = (q + 0.5) / (math.sqrt(2.0 * eps) * a)
        x2 = (q + 1.0) / (math.sqrt(2.0 * eps) * a)
        term_int[ell] = math.sqrt(eps / math.pi) * (
            math.sqrt(math.pi) / 2.0 * (erf(x2) - erf(x))
        )
        if eps * a * a <= 0.25:
            tri = (
                math.sqrt(2.0)
                * eps
                * a
                / (4.0 * math.sqrt(math.pi) * (q + 0.5))
                * math.exp(-(x**2))
            )
            term_pi[ell] = tri
            term_eps[ell] = tri
        else:
            term_pi[ell] = math.exp(-(x2**2)) / (2.0 * math.sqrt(2.0 * math.pi) * a)
            term_eps[ell] = (
                1.0
                / (2.0 * math.sqrt(2.0 * eps) * a)
                * math.exp(-((5.0 / (4.0 * math.sqrt(2.0 * math.pi) * a)) ** 2))
            )
    return term_pi, term_eps, term_int


def balanced_first_moment_lower(
    spec: SequenceSpec, n: int, address: Sequence[int]
) -> FirstMomentBound:
    """Lower bound on E(Z_{b_n} | A_I) for the interval with this address.

    Sums the per-level branch terms over l with v_l = 0 (zero contribution for
    l in {n-1, n}).
    """
    address = tuple(int(v) for v in address)
    if len(address) != n:
        raise ValueError("address length must equal n")
    term_pi, term_eps, term_int = _first_moment_terms(spec, n)
    zeros = [ell for ell in range(1, n - 1) if address[ell - 1] == 0]
    return FirstMomentBound(
        n=n,
        address=address,
        bound_pi=float(sum(term_pi[ell] for ell in zeros)),
        bound_eps=float(sum(term_eps[ell] for ell in zeros)),
        integral_form=float(sum(term_int[ell] for ell in zeros)),
    )


def min_balanced_bound(spec: SequenceSpec, n: int) -> float:
    """C(n): the smallest pi-variant bound over balanced addresses (>= n/3 zeros).

    The minimizing address parks two zeros at the zero-contribution levels
    n-1, n and the rest at the smallest per-level terms.
    """
    need = max(0, math.ceil(n / 3) - 2)
    if need == 0:
        return 0.0
    term_pi, _, _ = _first_moment_terms(spec, n)
    contributions = sorted(term_pi[1 : n - 1])
    return float(sum(contributions[:need]))


# ---------------------------------------------------------------------------
# First-moment budget check (Monte Carlo side)


@dataclass(frozen=True)
class BudgetCheck:
    n: int
    rule: CensusRule
    lhs: float
    rhs: float
    se_rhs: float
    c_n: float
    implied_upper_bound: float
    replicates: int


def _balanced_mask(spec: SequenceSpec, n: int, rule: CensusRule) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n - 1, -1, -1)) & 1
    if rule is CensusRule.ZERO_FRACTION_THIRD:
        zeros = n - bits.sum(axis=1)
        return zeros >= n / 3.0
    weights = np.array([1.0 / a for a in generate_a(spec, n)])
    d_n = weights.sum() / 2.0
    return bits @ weights <= d_n


def pick_census_rule(cf: CantorFunction, n: int) -> CensusRule:
    """Weighted rule for growing sequences, zero-fraction otherwise."""
    a = [cf.scales[m].a for m in range(1, n + 1)]
    if a[-1] > 1.0 and a[-1] >= a[0]:
        return CensusRule.WEIGHTED_SUM
    return CensusRule.ZERO_FRACTION_THIRD


def first_moment_budget_check(
    cf: CantorFunction,
    n: int,
    replicates: int,
    seed: int,
    rule: Optional[CensusRule] = None,
    refine_depth: int = 128,
    batches: int = 100,
) -> BudgetCheck:
    """Verify 1 >= sum over balanced I of bound(I) * P(A_I) within MC error.

    A_I is the event that I is the leftmost balanced interval whose diagonal
    event fires; P(A_I) is estimated from bridge-refined paths and multiplied
    by the deterministic conditional lower bound for I's address.
    """
    spec = cf.spec
    if spec.branching != 2:
        raise ValueError("budget check is defined for binary addresses")
    if rule is None:
        rule = pick_census_rule(cf, n)
    balanced = _balanced_mask(spec, n, rule)
    term_pi, _, _ = _first_moment_terms(spec, n)
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n - 1, -1, -1)) & 1
    zero_levels = bits[:, : n - 2] == 0 if n >= 2 else np.zeros((1 << n, 0), dtype=bool)
    bounds = zero_levels @ term_pi[1 : n - 1] if n >= 2 else np.zeros(1 << n)

    grid = build_grid(cf, n)
    n_int = grid.n_intervals
    chunk_paths = max(1, (1 << 15) // n_int)
    sizes = _batch_sizes(replicates, batches)
    rhs_batches = np.zeros(len(sizes))
    a_counts = np.zeros(n_int)
    for b, size in enumerate(sizes):
        values = sample_values(grid.times, size, derive_key(seed, STREAM_PATH, n, b))
        u_left = values[:, grid.left_index] - grid.f_left
        u_right = values[:, grid.right_index] - grid.f_right
        batch_counts = np.zeros(n_int)
        for chunk, lo in enumerate(range(0, size, chunk_paths)):
            hi = min(lo + chunk_paths, size)

            def key_for_round(r: int, _b=b, _c=chunk) -> int:
                return derive_key(seed, _STREAM_BUDGET_BRIDGE, n, _b, _c, r)

            y_ind = _bridge_crossing(
                u_left[lo:hi], u_right[lo:hi], grid.b_n, refine_depth, key_for_round
            )
            fired = y_ind & balanced[None, :]
            has = fired.any(axis=1)
            first = np.argmax(fired, axis=1)
            np.add.at(batch_counts, first[has], 1.0)
        a_counts += batch_counts
        rhs_batches[b] = float(bounds @ (batch_counts / size))
    weights_b = np.array(sizes, dtype=np.float64) / replicates
    rhs = float(bounds @ (a_counts / replicates))
    se = float(np.std(rhs_batches, ddof=1) / math.sqrt(len(sizes))) if len(sizes) > 1 else 0.0
    balanced_bounds = bounds[balanced]
    c_n = float(balanced_bounds.min()) if balanced_bounds.size else 0.0
    implied = 1.0 / c_n if c_n > 0 else math.inf
    return BudgetCheck(
        n=n,
        rule=rule,
        lhs=1.0,
        rhs=rhs,
        se_rhs=se,
        c_n=c_n,
        implied_upper_bound=implied,
        replicates=replicates,
    )


# ---------------------------------------------------------------------------
# LIL profiles


class LILClass(enum.Enum):
    DIVERGING = "diverging"
    VANISHING = "vanishing"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LILProfile:
    """Iterated-logarithm ratios |f(s)-f(t)| / sqrt(2 |s-t| loglog 1/|s-t|).

    The anchor t is an interval endpoint; at each level the comparison point
    is the gap-adjacent endpoint of the sibling child, so the f-difference is
    exactly k^-(l+1); the scale uses the containing-interval length b_l, the
    top of the sibling-distance bracket.
    """

    t: float
    anchor_level: int
    levels: tuple[int, ...]
    scales: tuple[float, ...]
    ratios: tuple[float, ...]
    classification: LILClass


_LIL_WINDOW = 5
_LIL_HI = 1.5
_LIL_LO = 0.75


def lil_profile(cf: CantorFunction, t, depth: Optional[int] = None) -> LILProfile:
    """Scale-by-scale LIL ratios at an endpoint anchor, from exact endpoint data."""
    depth = cf.depth if depth is None else min(depth, cf.depth)
    t_exact = Fraction(t)
    k = cf.k
    left = Fraction(1)
    anchor: Optional[int] = None
    levels: list[int] = []
    scales: list[float] = []
    ratios: list[float] = []
    inv_e = 1.0 / math.e
    for m in range(depth + 1):
        right = left + cf.b[m]
        if anchor is None and (t_exact == left or t_exact == right):
            anchor = m
        if anchor is not None:
            scale = float(right - left)  # endpoint round trip: equals b_m
            if scale < inv_e and m < depth:
                loglog = math.log(math.log(1.0 / scale))
                if loglog > 0:
                    delta_f = float(k ** -(m + 1))
                    levels.append(m)
                    scales.append(scale)
                    ratios.append(delta_f / math.sqrt(2.0 * scale * loglog))
        if m == depth:
            break
        step = cf.step[m + 1]
        j = min((t_exact - left) // step, k - 1)
        child_left = left + j * step
        if t_exact < child_left or t_exact > child_left + cf.b[m + 1]:
            if anchor is None:
                raise AnchorNotEndpoint(f"{t!r} leaves the construction at level {m + 1}")
            break
        left = child_left
    if anchor is None:
        raise AnchorNotEndpoint(f"{t!r} is not an endpoint through depth {depth}")

    tail = ratios[-_LIL_WINDOW:]
    classification = LILClass.INCONCLUSIVE
    if len(tail) == _LIL_WINDOW:
        increasing = all(b > a for a, b in zip(tail, tail[1:]))
        decreasing = all(b < a for a, b in zip(tail, tail[1:]))
        if increasing and min(tail) > _LIL_HI:
            classification = LILClass.DIVERGING
        elif decreasing and max(tail) < _LIL_LO:
            classification = LILClass.VANISHING
    return LILProfile(
        t=float(t_exact),
        anchor_level=anchor,
        levels=tuple(levels),
        scales=tuple(scales),
        ratios=tuple(ratios),
        classification=classification,
    )


# ---------------------------------------------------------------------------
# Cut probabilities and the isolated-zone construction

ALPHA_EXACT = float(ndtr(1.0) - ndtr(0.0))  # P(0 <= B(1) <= 1)


@dataclass(frozen=True)
class CutRow:
    j_lo: float
    j_hi: float
    width: float
    cover_level: int
    estimate: float
    se: float


@dataclass(frozen=True)
class CutSweep:
    rows: tuple[CutRow, ...]
    slope: float
    alpha_estimate: float
    alpha_se: float
    replicates: int


def _cover_indices(j_lo: float, width: float, k: int, depth: int) -> tuple[int, int]:
    n = int(math.floor(math.log(1.0 / width, k) + 1e-12))
    n = max(0, min(n, depth - 1))
    first = int(math.floor(j_lo * k**n))
    first = max(0, min(first, k**n - 2))
    return n, first


def cut_sweep(
    cf: CantorFunction,
    intervals: Sequence[tuple[float, float]],
    replicates: int,
    seed: int,
    batches: int = 100,
) -> CutSweep:
    """Zero-in-preimage probabilities for a family of value windows J.

    Each J is covered by two consecutive level-n value intervals (k^-n just
    above |J|); the event is a deepest-level Z firing inside the two covering
    preimage intervals.  All windows share the same paths; the alpha anchor
    P(0 <= B(1) <= 1) is estimated from the same replicates.
    """
    depth = cf.depth
    grid = build_grid(cf, depth)
    k = cf.k
    leaves = k**depth
    slices = []
    for lo, hi in intervals:
        width = hi - lo
        if not 0 < width <= 1:
            raise ValueError("need 0 < |J| <= 1")
        n, first = _cover_indices(lo, width, k, depth)
        span = k ** (depth - n)
        slices.append((n, first * span, min((first + 2) * span, leaves)))
    t1_index = int(np.searchsorted(grid.times, 1.0))

    sizes = _batch_sizes(replicates, batches)
    hit_batches = np.zeros((len(sizes), len(intervals)))
    alpha_batches = np.zeros(len(sizes))
    for b, size in enumerate(sizes):
        values = sample_values(grid.times, size, derive_key(seed, STREAM_PATH, depth, b))
        b_at_s = values[:, grid.right_index]
        z_ind = (b_at_s >= grid.f_left) & (b_at_s <= grid.f_right)
        for c, (_, lo_leaf, hi_leaf) in enumerate(slices):
            hit_batches[b, c] = np.mean(z_ind[:, lo_leaf:hi_leaf].any(axis=1))
        b1 = values[:, t1_index]
        alpha_batches[b] = np.mean((b1 >= 0.0) & (b1 <= 1.0))
    weights = np.array(sizes, dtype=np.float64) / replicates
    estimates = weights @ hit_batches
    ses = np.std(hit_batches, axis=0, ddof=1) / math.sqrt(len(sizes))
    rows = tuple(
        CutRow(
            j_lo=lo,
            j_hi=hi,
            width=hi - lo,
            cover_level=slices[c][0],
            estimate=float(estimates[c]),
            se=float(ses[c]),
        )
        for c, (lo, hi) in enumerate(intervals)
    )
    mask = estimates > 0
    slope = float("nan")
    if mask.sum() >= 2:
        xs = np.log([r.width for r, m in zip(rows, mask) if m])
        ys = np.log(estimates[mask])
        slope = float(np.polyfit(xs, ys, 1)[0])
    return CutSweep(
        rows=rows,
        slope=slope,
        alpha_estimate=float(weights @ alpha_batches),
        alpha_se=float(np.std(alpha_batches, ddof=1) / math.sqrt(len(sizes))),
        replicates=replicates,
    )


def cut_probability_bound(
    cf: CantorFunction, j_interval: tuple[float, float], replicates: int, seed: int
) -> CutRow:
    """Monte Carlo estimate for a single value window J."""
    return cut_sweep(cf, [j_interval], replicates, seed).rows[0]


@dataclass(frozen=True)
class IsolatedZoneLevel:
    n: int
    window_count: int
    window_width: float
    measure: float


@dataclass(frozen=True)
class IsolatedZone:
    n0: int
    threshold: float  # p_hat / (2 c1_hat), the allowed tail mass
    a_prime: str
    levels: tuple[IsolatedZoneLevel, ...]
    total_measure: float
    tail_measure_bound: float
    surviving_probability: float


def _tail_converges(values: Sequence[float]) -> tuple[bool, float]:
    """Geometric tail test; returns (converges, projected tail after the table)."""
    tail = values[len(values) // 2 :]
    ratios = [tail[i + 1] / tail[i] for i in range(len(tail) - 1)]
    rho = max(ratios)
    if rho >= 1.0:
        return False, math.inf
    return True, tail[-1] * rho / (1.0 - rho)


def isolated_zone_construction(
    cf: CantorFunction,
    spec: SequenceSpec,
    p_hat: float,
    c1_hat: float,
    n_table: int = 64,
) -> IsolatedZone:
    """Exclusion windows around the plateau values, per the summable-a_n regime.

    Chooses a'_n = sqrt(a_n), finds the first n0 with sum_{n>=n0} a'_n below
    p_hat/(2 c1_hat), and tabulates the windows J_{k,n} of width sqrt(b'_n) =
    2^-n a'_n for n in [n0, depth].
    """
    if not (0 < p_hat <= 1) or c1_hat <= 0:
        raise ValueError("need 0 < p_hat <= 1 and c1_hat > 0")
    a = generate_a(spec, n_table)
    ok_a, _ = _tail_converges(a)
    if not ok_a:
        raise RegimeMismatch("sum a_n diverges numerically")
    a_prime = [math.sqrt(v) for v in a]
    ok_p, tail_after_table = _tail_converges(a_prime)
    if not ok_p:
        raise RegimeMismatch("sum sqrt(a_n) diverges numerically; pick a different a'_n")
    threshold = p_hat / (2.0 * c1_hat)
    first_valid = next((i + 1 for i, v in enumerate(a) if v < 1.0), None)
    if first_valid is None:
        raise RegimeMismatch("a_n never drops below 1 in the table")
    suffix = np.cumsum(a_prime[::-1])[::-1]
    n0 = None
    for n in range(first_valid, n_table + 1):
        if suffix[n - 1] + tail_after_table <= threshold:
            n0 = n
            break
    if n0 is None:
        raise RegimeMismatch("no admissible n0 within the table; threshold too small")
    k = cf.k
    levels = []
    total = 0.0
    for n in range(n0, cf.depth + 1):
        width = 2.0**-n * a_prime[n - 1]
        count = 2**n + 1
        measure = count * width
        total += measure
        levels.append(IsolatedZoneLevel(n=n, window_count=count, window_width=width, measure=measure))
    tail_bound = 2.0 * (suffix[min(cf.depth, n_table - 1)] + tail_after_table)
    return IsolatedZone(
        n0=n0,
        threshold=threshold,
        a_prime="sqrt(a_n)",
        levels=tuple(levels),
        total_measure=total,
        tail_measure_bound=tail_bound,
        surviving_probability=p_hat / 2.0,
    )


# ---------------------------------------------------------------------------
# Hoelder diagnostics


@dataclass(frozen=True)
class HolderDiagnostics:
    paper_sigma: Optional[float]
    empirical_sigma: float
    scales: tuple[float, ...]
    sup_increments: tuple[float, ...]


def holder_diagnostics(cf: CantorFunction, depth: int) -> HolderDiagnostics:
    """Both exponent readings: the sequence-limit formula and a measured slope.

    paper_sigma is the limit of -log(k) n / log(a_n) when it stabilizes inside
    (0, 1); empirical_sigma is the least-squares slope of log sup-increment
    against log scale at the construction scales b_n.
    """
    if depth < 8:
        raise ValueError("depth must be >= 8")
    depth = min(depth, cf.depth)
    logk = math.log(cf.k)
    sigmas = []
    for n in range(2, depth + 1):
        a_n = cf.scales[n].a
        if a_n == 1.0:
            sigmas.append(None)
            continue
        sigmas.append(-logk * n / math.log(a_n))
    paper_sigma: Optional[float] = None
    if sigmas and all(s is not None for s in sigmas[-4:]):
        last = [s for s in sigmas[-4:]]
        if 0.0 < last[-1] < 1.0 and max(last) - min(last) <= 1e-3 * abs(last[-1]):
            paper_sigma = last[-1]

    n_eval = min(depth, 12)
    deltas = [float(cf.b[n]) for n in range(1, n_eval)]
    sups = [sup_increment(cf, n_eval, d) for d in deltas]
    slope = float(np.polyfit(np.log(deltas), np.log(sups), 1)[0])
    return HolderDiagnostics(
        paper_sigma=paper_sigma,
        empirical_sigma=slope,
        scales=tuple(deltas),
        sup_increments=tuple(sups),
    )


# ---------------------------------------------------------------------------
# CSV emitters


def write_census_csv(reports: Iterable[CensusReport], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["n", "rule", "d_n", "balanced", "unbalanced", "unbalanced_fraction", "chebyshev_bound", "theta"]
        )
        for r in reports:
            w.writerow(
                [
                    r.n,
                    r.rule.value,
                    "" if r.d_n is None else repr(r.d_n),
                    r.balanced_count,
                    r.unbalanced_count,
                    repr(r.unbalanced_fraction),
                    repr(r.chebyshev_bound),
                    repr(r.theta),
                ]
            )


def write_lil_csv(profiles: Iterable[LILProfile], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "anchor_level", "level", "scale", "ratio", "classification"])
        for p in profiles:
            for level, scale, ratio in zip(p.levels, p.scales, p.ratios):
                w.writerow(
                    [repr(p.t), p.anchor_level, level, repr(scale), repr(ratio), p.classification.value]
                )


def write_cuts_csv(sweep: CutSweep, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "j_lo", "j_hi", "width", "cover_level", "estimate", "se"])
        for r in sweep.rows:
            w.writerow(
                ["sweep", repr(r.j_lo), repr(r.j_hi), repr(r.width), r.cover_level, repr(r.estimate), repr(r.se)]
            )
        w.writerow(["slope", "", "", "", "", repr(sweep.slope), ""])
        w.writerow(["alpha", "", "", "", "", repr(sweep.alpha_estimate), repr(sweep.alpha_se)])


def write_bounds_csv(spec: SequenceSpec, n: int, path: str, z_grid: Optional[np.ndarray] = None) -> None:
    """S(z) table plus conditional-probability and first-moment bound tables."""
    if z_grid is None:
        z_grid = np.logspace(-2, 1, 61)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["table", "n", "ell", "param", "value_a", "value_b", "value_c"])
        for z in z_grid:
            w.writerow(
                ["s_function", "", "", repr(float(z)), repr(S_function(float(z))), repr(s_function_paper_bound(float(z))), ""]
            )
        for ell in range(n):
            c = conditional_sum_bound(spec, n, ell)
            w.writerow(["conditional_sum", n, ell, repr(c.z), repr(c.lhs), repr(c.rhs), repr(c.c2)])
            lo, hi = easy_conditional_bounds(spec, n, ell)
            w.writerow(["easy_conditional", n, ell, "", repr(lo), repr(hi), ""])
        fm = balanced_first_moment_lower(spec, n, (0,) * n)
        w.writerow(
            ["first_moment_lower", n, "", "all_zeros", repr(fm.bound_pi), repr(fm.bound_eps), repr(fm.integral_form)]
        )
