"""klab: numerical experiments on exponential sums of modular inverses.

Module map
----------
modarith
    Prime moduli, deterministic primality, modular and batch inversion.
intervals
    Validated integer intervals and disjoint interval families.
expsums
    Complete and incomplete inverse exponential sums; the O(p)
    all-window scan.
meanvalue
    Mean-square identities and bounds for window and family sums;
    dyadic window decompositions; extremal-window scans.
solver
    Exact counting and Fourier decomposition of x*y = 1 (mod p) with
    both variables confined to intervals; solubility thresholds.
harness
    Seeded parameter sweeps producing CSV/JSON rows, used by the CLI.
cli
    The ``klab`` argparse front end.
"""

from .expsums import (
    NonRealAccumulation,
    SumSpec,
    WindowSpec,
    all_windows,
    e_p,
    incomplete_kloosterman,
    interval_sum,
    kloosterman_complete,
    kloosterman_table,
)
from .intervals import (
    DisjointFamily,
    IntervalOutOfRange,
    IntervalPairFamily,
    IntInterval,
)
from .meanvalue import (
    DegenerateBound,
    DyadicPlan,
    HooleyScanStats,
    InvalidK,
    MeanValueReport,
    check_family_mean_square,
    check_window_mean_square,
    dyadic_plan,
    family_mean_square,
    family_mean_square_bound,
    hooley_scan,
    reconstruct_window_sum,
    spectral_mean_square,
    trivial_family_bound,
    window_mean_square,
    window_mean_square_bound,
)
from .modarith import (
    PrimeModulus,
    ZeroNotInvertible,
    batch_inv,
    inv_mod,
    is_prime_u64,
    mul_mod,
)
from .solver import (
    InfeasibleGeometry,
    SolubilityReport,
    count_solutions,
    error_term,
    family_first_soluble,
    main_term,
    pair_report,
    solubility_threshold,
    two_thirds_parameters,
    two_thirds_preset,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # modarith
    "PrimeModulus", "ZeroNotInvertible", "batch_inv", "inv_mod",
    "is_prime_u64", "mul_mod",
    # intervals
    "IntInterval", "IntervalOutOfRange", "DisjointFamily", "IntervalPairFamily",
    # expsums
    "SumSpec", "WindowSpec", "NonRealAccumulation", "e_p",
    "kloosterman_complete", "kloosterman_table", "incomplete_kloosterman",
    "interval_sum", "all_windows",
    # meanvalue
    "MeanValueReport", "DegenerateBound", "InvalidK", "DyadicPlan",
    "HooleyScanStats", "window_mean_square", "window_mean_square_bound",
    "spectral_mean_square", "family_mean_square", "family_mean_square_bound",
    "trivial_family_bound", "check_window_mean_square",
    "check_family_mean_square", "dyadic_plan", "reconstruct_window_sum",
    "hooley_scan",
    # solver
    "InfeasibleGeometry", "SolubilityReport", "count_solutions", "main_term",
    "error_term", "family_first_soluble", "pair_report",
    "solubility_threshold", "two_thirds_parameters", "two_thirds_preset",
]
