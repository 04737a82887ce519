"""Gap sequences (a_n), derived interval scales (b_n), and theorem-condition
classification.

Scale arithmetic is exact: a_n^2 is kept as a Fraction (floats enter as the
dyadic rationals they are), so b_n = (k^{-n} a_n)^2 and every endpoint built
from it carry no accumulated rounding.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NonPositiveEntry, TableTooShort

# Head padding for the linearly growing sequence: a_n = n only admits positive
# sibling gaps from n = 5 on (a_{n+1} < sqrt(2) a_n and a_1 < sqrt(2) are forced
# by the construction), so the first four entries ramp up geometrically.
# Classification is insensitive to finitely many entries.
LINEAR_HEAD = (1.38, 1.9, 2.62, 3.62)


class Kind(enum.Enum):
    GEOMETRIC = "geometric"
    POWER = "power"
    CONSTANT = "constant"
    INVERSE_LOG_SQRT = "inverse_log_sqrt"
    LINEAR = "linear"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SequenceSpec:
    """A gap-sequence generator plus the structural parameters k and epsilon."""

    kind: Kind
    x: Optional[float] = None
    d: Optional[float] = None
    a: Optional[float] = None
    table: Optional[tuple[float, ...]] = None
    branching: int = 2
    epsilon: float = 0.5

    def __post_init__(self) -> None:
        if self.branching < 2:
            raise ValueError("branching k must be >= 2")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.kind is Kind.GEOMETRIC and (self.x is None or self.x <= 1.0):
            raise ValueError("geometric sequences need x > 1")
        if self.kind is Kind.POWER and (self.d is None or self.d <= 0.0):
            raise ValueError("power sequences need d > 0")
        if self.kind is Kind.CONSTANT and (self.a is None or self.a <= 0.0):
            raise NonPositiveEntry("constant sequences need a > 0")
        if self.kind is Kind.CUSTOM:
            if not self.table:
                raise TableTooShort("custom sequences need a nonempty table")
            if any(v <= 0.0 for v in self.table):
                raise NonPositiveEntry("custom table entries must be positive")

    @classmethod
    def geometric(cls, x: float, **kw) -> "SequenceSpec":
        return cls(Kind.GEOMETRIC, x=x, **kw)

    @classmethod
    def power(cls, d: float, **kw) -> "SequenceSpec":
        return cls(Kind.POWER, d=d, **kw)

    @classmethod
    def constant(cls, a: float, **kw) -> "SequenceSpec":
        return cls(Kind.CONSTANT, a=a, **kw)

    @classmethod
    def inverse_log_sqrt(cls, **kw) -> "SequenceSpec":
        return cls(Kind.INVERSE_LOG_SQRT, **kw)

    @classmethod
    def linear(cls, **kw) -> "SequenceSpec":
        kw.setdefault("epsilon", 0.04)
        return cls(Kind.LINEAR, **kw)

    @classmethod
    def custom(cls, table: Sequence[float], **kw) -> "SequenceSpec":
        return cls(Kind.CUSTOM, table=tuple(float(v) for v in table), **kw)

    @property
    def label(self) -> str:
        if self.kind is Kind.GEOMETRIC:
            core = f"geometric(x={self.x:g})"
        elif self.kind is Kind.POWER:
            core = f"power(d={self.d:g})"
        elif self.kind is Kind.CONSTANT:
            core = f"constant(a={self.a:g})"
        elif self.kind is Kind.CUSTOM:
            core = f"custom(len={len(self.table or ())})"
        else:
            core = self.kind.value
        return f"{core},k={self.branching}"


def generate_a(spec: SequenceSpec, n_max: int) -> list[float]:
    """The values a_1 .. a_{n_max} of the gap sequence."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    kind = spec.kind
    if kind is Kind.GEOMETRIC:
        out = [spec.x ** (-n) for n in range(1, n_max + 1)]
    elif kind is Kind.POWER:
        out = [n ** (-spec.d) for n in range(1, n_max + 1)]
    elif kind is Kind.CONSTANT:
        out = [float(spec.a)] * n_max
    elif kind is Kind.INVERSE_LOG_SQRT:
        # n = 1 is padded with the n = 2 value; ln 1 = 0 has no inverse.
        out = [math.sqrt(1.0 / math.log(max(n, 2))) for n in range(1, n_max + 1)]
    elif kind is Kind.LINEAR:
        out = [LINEAR_HEAD[n - 1] if n <= len(LINEAR_HEAD) else float(n) for n in range(1, n_max + 1)]
    elif kind is Kind.CUSTOM:
        assert spec.table is not None
        if len(spec.table) < n_max:
            raise TableTooShort(f"table has {len(spec.table)} entries, need {n_max}")
        out = list(spec.table[:n_max])
    else:  # pragma: no cover
        raise ValueError(f"unknown kind {kind}")
    if any(not v > 0.0 for v in out):
        raise NonPositiveEntry("generated sequence contains a nonpositive value")
    return out


def generate_a_squared(spec: SequenceSpec, n_max: int) -> list[Fraction]:
    """Exact squares a_n^2 as Fractions (exact whenever a_n^2 is rational)."""
    if spec.kind is Kind.GEOMETRIC:
        x = Fraction(spec.x)
        return [1 / (x ** (2 * n)) for n in range(1, n_max + 1)]
    if spec.kind is Kind.POWER and float(spec.d).is_integer():
        d2 = 2 * int(spec.d)
        return [Fraction(1, n**d2) for n in range(1, n_max + 1)]
    if spec.kind is Kind.CONSTANT:
        return [Fraction(spec.a) ** 2] * n_max
    if spec.kind is Kind.LINEAR:
        out = []
        for n in range(1, n_max + 1):
            out.append(Fraction(LINEAR_HEAD[n - 1]) ** 2 if n <= len(LINEAR_HEAD) else Fraction(n * n))
        return out
    return [Fraction(v) ** 2 for v in generate_a(spec, n_max)]


@dataclass(frozen=True)
class DerivedScales:
    """One level's scales: a_n and the interval length b_n = (k^{-n} a_n)^2."""

    n: int
    a: float
    b: float
    a_sq: Fraction
    b_exact: Fraction


def derive_b(spec: SequenceSpec, n_max: int) -> list[DerivedScales]:
    """Scales for levels 0..n_max; a_0 is fixed so that b_0 = 1 ([1,2] root)."""
    k2 = Fraction(spec.branching) ** 2
    rows = [DerivedScales(0, 1.0, 1.0, Fraction(1), Fraction(1))]
    a_sq = generate_a_squared(spec, n_max)
    a_f = generate_a(spec, n_max)
    for n in range(1, n_max + 1):
        b = a_sq[n - 1] / k2**n
        rows.append(DerivedScales(n, a_f[n - 1], float(b), a_sq[n - 1], b))
    return rows


@dataclass(frozen=True)
class EpsilonCheck:
    holds: bool
    largest_valid_epsilon: float


def check_epsilon_condition(spec: SequenceSpec, n_max: int) -> EpsilonCheck:
    """Check a_n^2 - (1/k) a_{n+1}^2 >= eps * a_n^2 for n = 1..n_max-1.

    largest_valid_epsilon is min_n (1 - a_{n+1}^2/(k a_n^2)), clipped at 0.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    a_sq = generate_a_squared(spec, n_max)
    k = spec.branching
    margins = [1 - a_sq[i + 1] / (k * a_sq[i]) for i in range(n_max - 1)]
    worst = min(margins)
    eps = Fraction(spec.epsilon)
    return EpsilonCheck(
        holds=all(m >= eps for m in margins),
        largest_valid_epsilon=float(max(worst, Fraction(0))),
    )


def check_corollary_condition(
    spec: SequenceSpec, x_table: Sequence[float], n_max: int
) -> bool:
    """Check a_n^2 - (1/k) a_{n+1}^2 >= x_n and x_n < a_n^2 for n = 1..n_max-1."""
    if len(x_table) < n_max:
        raise TableTooShort(f"x table has {len(x_table)} entries, need {n_max}")
    if any(x <= 0 for x in x_table[:n_max]):
        raise NonPositiveEntry("x_n must be positive")
    a_sq = generate_a_squared(spec, n_max)
    k = spec.branching
    for i in range(n_max - 1):
        x = Fraction(float(x_table[i]))
        if not (a_sq[i] - a_sq[i + 1] / k >= x and x < a_sq[i]):
            return False
    return True


class Verdict(enum.Enum):
    POSITIVE_PROBABILITY = "positive_probability"
    ZERO_PROBABILITY = "zero_probability"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class WitnessSmallSequence:
    """Witness for the small-a_n zero criterion: the sequence c_n plus delta, n_0."""

    c_description: str
    delta: float
    n0: int


@dataclass(frozen=True)
class WitnessLogBudget:
    """Witness for the growing-a_n zero criterion: sum 1/a_l <= C log n."""

    c_constant: float


@dataclass(frozen=True)
class ConvergenceHeuristic:
    """Knobs for the partial-sum heuristics used on custom tables."""

    tail_fraction: float = 0.5
    tail_margin: float = 0.1  # projected tail must stay under this times the partial sum
    harmonic_floor: float = 0.1  # min of n*c_n on the tail to call sum(c_n) divergent
    log_fit_tolerance: float = 0.05


@dataclass(frozen=True)
class ClassificationVerdict:
    positive_by_sum_a: bool
    positive_by_sum_inv_a: bool
    zero_by_3_3_i: Optional[WitnessSmallSequence]
    zero_by_3_3_ii: Optional[WitnessLogBudget]
    corollary_x_n: Optional[str]
    verdict: Verdict

    def __post_init__(self) -> None:
        positive = self.positive_by_sum_a or self.positive_by_sum_inv_a
        zero = self.zero_by_3_3_i is not None or self.zero_by_3_3_ii is not None
        if positive and self.verdict is not Verdict.POSITIVE_PROBABILITY:
            raise ValueError("positive flags must yield a positive verdict")
        if self.verdict is Verdict.ZERO_PROBABILITY and not zero:
            raise ValueError("a zero verdict needs a recorded witness")
        if positive and self.verdict is Verdict.ZERO_PROBABILITY:
            raise ValueError("verdicts are mutually exclusive")


_DELTA = 0.1


def _ratio_test_converges(values: Sequence[float], heur: ConvergenceHeuristic) -> bool:
    """Geometric-tail test: ratios < 1 on the tail and projected tail small."""
    n = len(values)
    tail = values[int(n * heur.tail_fraction) :]
    if len(tail) < 4:
        return False
    ratios = [tail[i + 1] / tail[i] for i in range(len(tail) - 1)]
    rho = max(ratios)
    if rho >= 1.0:
        return False
    projected_tail = tail[-1] * rho / (1.0 - rho)
    return projected_tail <= heur.tail_margin * sum(values)


def _small_sequence_witness(
    a: Sequence[float], epsilon: float, heur: ConvergenceHeuristic
) -> Optional[WitnessSmallSequence]:
    """Search for c_n with sum c_n = inf and 1/c_n >= a_n >= sqrt(1/((8-d) eps ln(1/c_n)))."""
    factor = (8.0 - _DELTA) * epsilon
    n_probe = len(a)

    def admissible(c: float, an: float) -> bool:
        return c <= 1.0 / an and an * an * factor * math.log(1.0 / c) >= 1.0

    # The canonical witness c_n = 1/n first (harmonic sum diverges).
    n0 = None
    for n in range(2, n_probe + 1):
        if all(admissible(1.0 / m, a[m - 1]) for m in range(n, n_probe + 1)):
            n0 = n
            break
    if n0 is not None:
        return WitnessSmallSequence("c_n = 1/n", _DELTA, n0)

    # Otherwise take the largest admissible c_n and test divergence of its sum.
    c_max = []
    for an in a:
        c = min(1.0 / an, math.exp(-1.0 / (factor * an * an)))
        c_max.append(c)
    tail_start = int(n_probe * heur.tail_fraction)
    floor = min((n + 1) * c for n, c in enumerate(c_max) if n >= tail_start)
    if floor >= heur.harmonic_floor:
        return WitnessSmallSequence(
            "c_n = min(1/a_n, exp(-1/((8-delta) eps a_n^2)))", _DELTA, tail_start + 1
        )
    return None


def _log_budget_witness(
    a: Sequence[float], heur: ConvergenceHeuristic, symbolic_divergence: bool = False
) -> Optional[WitnessLogBudget]:
    """Check sum_{l<=n} 1/a_l -> inf with sum <= C log n on the probe range."""
    partial = 0.0
    h = []
    for v in a:
        partial += 1.0 / v
        h.append(partial)
    n_probe = len(a)
    tail_start = max(2, int(n_probe * heur.tail_fraction))
    logs = [math.log(n) for n in range(tail_start, n_probe + 1)]
    tail = h[tail_start - 1 :]
    # Least-squares slope of the partial sums against log n on the tail.
    mean_x = sum(logs) / len(logs)
    mean_y = sum(tail) / len(tail)
    sxx = sum((x - mean_x) ** 2 for x in logs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(logs, tail))
    slope = sxy / sxx if sxx > 0 else 0.0
    if slope <= 0:
        return None
    fitted = [mean_y + slope * (x - mean_x) for x in logs]
    spread = max(tail) - min(tail)
    if spread <= 0:
        return None
    rel_resid = max(abs(f - y) for f, y in zip(fitted, tail)) / spread
    if not symbolic_divergence and rel_resid > heur.log_fit_tolerance:
        return None
    c_constant = max(h[n - 1] / math.log(n) for n in range(2, n_probe + 1))
    return WitnessLogBudget(c_constant)


def classify(
    spec: SequenceSpec,
    n_probe: int = 64,
    tail_test: ConvergenceHeuristic = ConvergenceHeuristic(),
) -> ClassificationVerdict:
    """Decide which theorem condition the sequence satisfies.

    Closed-form kinds are decided symbolically; custom tables fall back to
    partial-sum heuristics over the probe range and may come back undecided.
    """
    if n_probe < 16:
        raise ValueError("n_probe must be >= 16")
    a = generate_a(spec, n_probe)

    eps_check = check_epsilon_condition(spec, min(n_probe, 48))
    corollary = None
    if eps_check.largest_valid_epsilon > 0:
        corollary = f"x_n = eps*a_n^2 with eps = {eps_check.largest_valid_epsilon:.6g}"

    positive_a = False
    positive_inv = False
    zero_i: Optional[WitnessSmallSequence] = None
    zero_ii: Optional[WitnessLogBudget] = None

    kind = spec.kind
    if kind is Kind.GEOMETRIC:
        positive_a = True  # sum x^{-n} converges for x > 1
    elif kind is Kind.POWER:
        positive_a = spec.d > 1.0  # p-series
    elif kind is Kind.CONSTANT:
        zero_i = _small_sequence_witness(a, spec.epsilon, tail_test)
    elif kind is Kind.INVERSE_LOG_SQRT:
        zero_i = _small_sequence_witness(a, spec.epsilon, tail_test)
    elif kind is Kind.LINEAR:
        zero_ii = _log_budget_witness(a, tail_test, symbolic_divergence=True)
    else:
        positive_a = _ratio_test_converges(a, tail_test)
        if not positive_a:
            positive_inv = _ratio_test_converges([1.0 / v for v in a], tail_test)
        if not (positive_a or positive_inv):
            zero_i = _small_sequence_witness(a, spec.epsilon, tail_test)
            if zero_i is None:
                zero_ii = _log_budget_witness(a, tail_test)

    if positive_a or positive_inv:
        verdict = Verdict.POSITIVE_PROBABILITY
        zero_i = None
        zero_ii = None
    elif zero_i is not None or zero_ii is not None:
        verdict = Verdict.ZERO_PROBABILITY
    else:
        verdict = Verdict.UNDECIDED

    return ClassificationVerdict(
        positive_by_sum_a=positive_a,
        positive_by_sum_inv_a=positive_inv,
        zero_by_3_3_i=zero_i,
        zero_by_3_3_ii=zero_ii,
        corollary_x_n=corollary,
        verdict=verdict,
    )
