"""Interval families, generalized Cantor set approximations, and the k-ary
Cantor function with exact endpoint evaluation.

Endpoints are exact prefix sums 1 + sum_i v_i * (b_i + gap_i) over Fraction
scales, so endpoint arithmetic never accumulates per-level rounding and event
grids align bit-exactly with function values.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .errors import DegenerateGap, LevelExceedsDepth, MismatchedLevels
from .sequences import DerivedScales, SequenceSpec, derive_b

Real = Union[int, float, Fraction]


@dataclass(frozen=True)
class IntervalNode:
    """One connected component of the level-n approximation."""

    level: int
    address: tuple[int, ...]
    left: Fraction
    right: Fraction
    f_left: Fraction
    f_right: Fraction

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def midpoint(self) -> Fraction:
        return (self.left + self.right) / 2


class CantorFunction:
    """Scales, gaps, and on-demand interval nodes for one spec up to ``depth``.

    Immutable after construction; nodes above the materialization threshold
    are computed from their address on demand.
    """

    def __init__(self, spec: SequenceSpec, depth: int, scales: Sequence[DerivedScales]):
        self.spec = spec
        self.depth = depth
        self.scales = list(scales)
        k = spec.branching
        self.b: list[Fraction] = [s.b_exact for s in self.scales]
        self.gap: list[Fraction] = [Fraction(0)]
        self.step: list[Fraction] = [Fraction(0)]
        for n in range(1, depth + 1):
            gap = (self.b[n - 1] - k * self.b[n]) / (k - 1)
            if gap <= 0:
                raise DegenerateGap(
                    f"children overlap at level {n}: b_{n-1} - {k} b_{n} <= 0"
                )
            self.gap.append(gap)
            self.step.append(self.b[n] + gap)

    @property
    def k(self) -> int:
        return self.spec.branching

    def node(self, address: Sequence[int]) -> IntervalNode:
        n = len(address)
        if n > self.depth:
            raise LevelExceedsDepth(f"level {n} exceeds depth {self.depth}")
        k = self.k
        left = Fraction(1)
        for i, v in enumerate(address, start=1):
            if not 0 <= v < k:
                raise ValueError(f"address digit {v} out of range for k={k}")
            left += v * self.step[i]
        f_num = 0
        for v in address:
            f_num = f_num * k + v
        f_left = Fraction(f_num, k**n)
        return IntervalNode(
            level=n,
            address=tuple(address),
            left=left,
            right=left + self.b[n],
            f_left=f_left,
            f_right=f_left + Fraction(1, k**n),
        )

    def level_nodes(self, n: int) -> Iterator[IntervalNode]:
        """All level-n nodes in spatial (= address) order."""
        if n > self.depth:
            raise LevelExceedsDepth(f"level {n} exceeds depth {self.depth}")
        k = self.k
        for idx in range(k**n):
            digits = []
            rem = idx
            for _ in range(n):
                digits.append(rem % k)
                rem //= k
            yield self.node(tuple(reversed(digits)))

    def endpoints_exact(self, n: int) -> tuple[list[Fraction], list[Fraction]]:
        """Left and right endpoints of every level-n interval, spatial order."""
        if n > self.depth:
            raise LevelExceedsDepth(f"level {n} exceeds depth {self.depth}")
        lefts = [Fraction(1)]
        for level in range(1, n + 1):
            step = self.step[level]
            lefts = [left + v * step for left in lefts for v in range(self.k)]
        b_n = self.b[n]
        return lefts, [left + b_n for left in lefts]


def build_tree(spec: SequenceSpec, depth: int) -> CantorFunction:
    """Construct the interval family through ``depth`` levels.

    Requires strictly positive sibling gaps (b_n - k b_{n+1} > 0) at every
    level, the weaker corollary-style condition; rejects degenerate specs.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    scales = derive_b(spec, max(depth, 1))[: depth + 1]
    return CantorFunction(spec, depth, scales)


def evaluate_fbn_exact(cf: CantorFunction, n: int, t: Real) -> Fraction:
    """Level-n approximation value at t, exact in Fraction arithmetic."""
    if n > cf.depth:
        raise LevelExceedsDepth(f"level {n} exceeds depth {cf.depth}")
    t = Fraction(t)
    if t <= 1:
        return Fraction(0)
    if t >= 2:
        return Fraction(1)
    k = cf.k
    left = Fraction(1)
    f_left = Fraction(0)
    for m in range(n):
        step = cf.step[m + 1]
        j = min((t - left) // step, k - 1)
        child_left = left + j * step
        unit = Fraction(1, k ** (m + 1))
        if t < child_left:
            return f_left + j * unit  # gap before child j
        if t <= child_left + cf.b[m + 1]:
            left = child_left
            f_left += j * unit
            continue
        return f_left + (j + 1) * unit  # gap after child j
    return f_left + (t - left) / cf.b[n] * Fraction(1, k**n)


def evaluate_fbn(cf: CantorFunction, n: int, t: Real) -> float:
    return float(evaluate_fbn_exact(cf, n, t))


def evaluate_fbn_grid(cf: CantorFunction, n: int, ts: np.ndarray) -> np.ndarray:
    """Vectorized float evaluation of the level-n approximation."""
    if n > cf.depth:
        raise LevelExceedsDepth(f"level {n} exceeds depth {cf.depth}")
    ts = np.asarray(ts, dtype=np.float64)
    k = cf.k
    out = np.zeros(ts.shape, dtype=np.float64)
    out[ts >= 2.0] = 1.0
    active = (ts > 1.0) & (ts < 2.0)
    left = np.ones(ts.shape)
    f_left = np.zeros(ts.shape)
    for m in range(n):
        if not np.any(active):
            break
        step = float(cf.step[m + 1])
        b_child = float(cf.b[m + 1])
        unit = k ** -(m + 1)
        j = np.clip(np.floor((ts - left) / step), 0, k - 1)
        child_left = left + j * step
        in_gap_before = active & (ts < child_left)
        out[in_gap_before] = f_left[in_gap_before] + j[in_gap_before] * unit
        in_child = active & (ts >= child_left) & (ts <= child_left + b_child)
        in_gap_after = active & (ts > child_left + b_child)
        out[in_gap_after] = f_left[in_gap_after] + (j[in_gap_after] + 1) * unit
        left = np.where(in_child, child_left, left)
        f_left = np.where(in_child, f_left + j * unit, f_left)
        active = in_child
    if np.any(active):
        b_n = float(cf.b[n])
        out[active] = f_left[active] + (ts[active] - left[active]) / b_n * k**-n
    return out


def evaluate_fb(cf: CantorFunction, t: Real, tol: float) -> tuple[float, float]:
    """Enclosure [lo, hi] of the limit function at t.

    Exact (zero width) on gap plateaus and at interval endpoints; otherwise
    the enclosure narrows to width <= max(tol, k^-depth).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    t = Fraction(t)
    if t <= 1:
        return (0.0, 0.0)
    if t >= 2:
        return (1.0, 1.0)
    k = cf.k
    left = Fraction(1)
    f_left = Fraction(0)
    m = 0
    while True:
        if t == left:
            return (float(f_left), float(f_left))
        if t == left + cf.b[m]:
            v = float(f_left + Fraction(1, k**m))
            return (v, v)
        if k**-m <= tol or m == cf.depth:
            return (float(f_left), float(f_left + Fraction(1, k**m)))
        step = cf.step[m + 1]
        j = min((t - left) // step, k - 1)
        child_left = left + j * step
        unit = Fraction(1, k ** (m + 1))
        if t < child_left:
            v = float(f_left + j * unit)
            return (v, v)
        if t > child_left + cf.b[m + 1]:
            v = float(f_left + (j + 1) * unit)
            return (v, v)
        left = child_left
        f_left += j * unit
        m += 1


def locate(cf: CantorFunction, t: Real, n: int) -> Optional[IntervalNode]:
    """The unique level-n node containing t, or None if t leaves the set."""
    if n > cf.depth:
        raise LevelExceedsDepth(f"level {n} exceeds depth {cf.depth}")
    t = Fraction(t)
    if t < 1 or t > 2:
        return None
    k = cf.k
    left = Fraction(1)
    address: list[int] = []
    for m in range(n):
        step = cf.step[m + 1]
        j = int(min((t - left) // step, k - 1))
        child_left = left + j * step
        if t < child_left or t > child_left + cf.b[m + 1]:
            return None
        left = child_left
        address.append(j)
    return cf.node(tuple(address))


def common_ancestor_level(i: IntervalNode, j: IntervalNode) -> int:
    """Length of the longest common address prefix of two same-level nodes."""
    if i.level != j.level or i.address == j.address:
        raise MismatchedLevels("need two distinct nodes of the same level")
    ell = 0
    for a, b in zip(i.address, j.address):
        if a != b:
            break
        ell += 1
    return ell


def write_tree_csv(cf: CantorFunction, max_level: int, path: str) -> None:
    """Dump (level, address, endpoints, f-values) for plotting approximations."""
    max_level = min(max_level, cf.depth)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["level", "address", "left", "right", "f_left", "f_right"])
        for n in range(max_level + 1):
            for node in cf.level_nodes(n):
                w.writerow(
                    [
                        n,
                        "".join(str(d) for d in node.address),
                        repr(float(node.left)),
                        repr(float(node.right)),
                        repr(float(node.f_left)),
                        repr(float(node.f_right)),
                    ]
                )


def total_level_length(cf: CantorFunction, n: int) -> Fraction:
    """Exact total length of the level-n family: k^n * b_n (= a_n^2)."""
    return (cf.k**n) * cf.b[n]


def sup_increment(cf: CantorFunction, n_eval: int, delta: float) -> float:
    """sup_t f(t+delta) - f(t) for the level-n_eval approximation.

    The approximation is piecewise linear with breakpoints at level-n_eval
    endpoints; the supremum over windows of width delta is attained with one
    window edge at a breakpoint, so scanning both edge families is exact.
    """
    lefts, rights = cf.endpoints_exact(n_eval)
    breaks = np.array(sorted({float(x) for x in lefts + rights}))
    candidates = np.concatenate([breaks, breaks - delta])
    candidates = candidates[(candidates >= 1.0 - delta) & (candidates <= 2.0)]
    lo = evaluate_fbn_grid(cf, n_eval, candidates)
    hi = evaluate_fbn_grid(cf, n_eval, candidates + delta)
    return float(np.max(hi - lo))
