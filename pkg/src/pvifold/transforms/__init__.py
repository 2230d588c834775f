"""Symmetry transformations of the sixth Painleve equation."""

from .conjugate import conjugate_to_shape, find_conjugation, relabel
from .contiguous import (Y4Chain, contiguous_Y0, contiguous_y1y2, deta_dtau_identity, inverse_quadratic,
                         companion_y2, y4_chain)
from .errors import DegenerateFormula, FixedSolutionError, ShapeError, TransformError
from .fractional import FL_ROWS, GENERATING_ROWS, FLRow, compose_rows, fl_apply, fl_row
from .okamoto import (NuTuple, fl_commutes, okamoto, okamoto_compose_identity_check, okamoto_inverse_nu,
                      relabel_nu)
from .pipeline import TransformStep, apply_pipeline, load_pipeline, parse_pipeline
from .quadratic import (alt_notation_crosscheck, fold_context, kitaev_A, kitaev_A_b_plus_one, kitaev_A_half,
                        kitaev_B, manin_quadratic, sym_context, table_quadratic)
from .reach import Reachability, schlesinger_reachable
from .shifts import ShiftState, apply_shift, param_shift

__all__ = [
    "conjugate_to_shape", "find_conjugation", "relabel", "Y4Chain", "contiguous_Y0", "contiguous_y1y2",
    "deta_dtau_identity", "inverse_quadratic", "companion_y2", "y4_chain", "DegenerateFormula",
    "FixedSolutionError", "ShapeError", "TransformError", "FL_ROWS", "GENERATING_ROWS", "FLRow",
    "compose_rows", "fl_apply", "fl_row", "NuTuple", "okamoto", "okamoto_compose_identity_check",
    "okamoto_inverse_nu", "relabel_nu", "fl_commutes", "TransformStep", "apply_pipeline", "load_pipeline", "parse_pipeline",
    "alt_notation_crosscheck", "fold_context", "kitaev_A", "kitaev_A_b_plus_one", "kitaev_A_half",
    "kitaev_B", "manin_quadratic", "sym_context", "table_quadratic", "Reachability",
    "schlesinger_reachable", "ShiftState", "apply_shift", "param_shift",
]
