from .integer import reduce_integer_to_modular, reduce_modular_to_integer, totality_size
from .plane import (det_mod, difference_matrix, embed_moment_curve, is_affinely_degenerate, moment_determinant,
                    moment_determinant_closed_form, reduce_ksum_to_plane, solve_plane_bruteforce)
from .sis import LevelTrace, ReductionConfig, TraceRecord, reduce_sis_to_ksum, rerandomize

__all__ = [
    "reduce_integer_to_modular", "reduce_modular_to_integer", "totality_size",
    "det_mod", "difference_matrix", "embed_moment_curve", "is_affinely_degenerate", "moment_determinant",
    "moment_determinant_closed_form", "reduce_ksum_to_plane", "solve_plane_bruteforce",
    "LevelTrace", "ReductionConfig", "TraceRecord", "reduce_sis_to_ksum", "rerandomize",
]
