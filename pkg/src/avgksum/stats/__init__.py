from .bounds import (hitting_exceed_bound, hitting_threshold, interval_alpha, interval_totality_bounds,
                     lhl_beta, modular_totality_bounds, multi_hitting_bound, rerandomization_delta)
from .exact import exact_hitting_probability, exact_subset_sum_distance, subset_sum_counts
from .montecarlo import TotalityReport, estimate_hitting_general, estimate_totality
from .params import ParamSet, theorem51_params

__all__ = [
    "hitting_exceed_bound", "hitting_threshold", "interval_alpha", "interval_totality_bounds",
    "lhl_beta", "modular_totality_bounds", "multi_hitting_bound", "rerandomization_delta",
    "exact_hitting_probability", "exact_subset_sum_distance", "subset_sum_counts",
    "TotalityReport", "estimate_hitting_general", "estimate_totality",
    "ParamSet", "theorem51_params",
]
