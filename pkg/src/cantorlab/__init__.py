"""cantorlab: Brownian motion against generalized Cantor functions.

Builds k-ary Cantor sets/functions from gap sequences, simulates Brownian
paths on endpoint-aligned grids, and verifies hitting-event moments, census
bounds, iterated-logarithm profiles, and cut-probability scalings.
"""

from .sequences import (
    ClassificationVerdict,
    ConvergenceHeuristic,
    DerivedScales,
    EpsilonCheck,
    Kind,
    SequenceSpec,
    Verdict,
    check_corollary_condition,
    check_epsilon_condition,
    classify,
    derive_b,
    generate_a,
)
from .cantor import (
    CantorFunction,
    IntervalNode,
    build_tree,
    common_ancestor_level,
    evaluate_fb,
    evaluate_fbn,
    locate,
)
from .brownian import PathSample, TimeGrid, refine_bridge, rescale_markov, sample_path
from .events import (
    EventOutcome,
    MomentReport,
    ZOracle,
    build_grid,
    eval_Y,
    eval_Z,
    exact_Z_oracle,
    paley_zygmund,
    second_moment_decomposition_check,
    simulate_moments,
    zero_in_cantor_detector,
)
from .analysis import (
    CensusReport,
    CensusRule,
    CutSweep,
    HolderDiagnostics,
    IsolatedZone,
    LILClass,
    LILProfile,
    S_function,
    balanced_first_moment_lower,
    census,
    conditional_sum_bound,
    cut_probability_bound,
    cut_sweep,
    easy_conditional_bounds,
    first_moment_budget_check,
    holder_diagnostics,
    isolated_zone_construction,
    lil_profile,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
