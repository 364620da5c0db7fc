"""Local Bahadur efficiency machinery."""

from .closed_forms import polya_delta2_closed_form, polya_efficiency_closed_form, polya_omega
from .models import MODEL_NAMES, get_model
from .slopes import (GRID, HALF_GRID, EfficiencyReport, ExtrapolationError,
                     large_deviation_coefficient, limit_under_alternative, local_derivative,
                     local_efficiency, richardson, sup_family_projection_variance, sup_variance)
from .table import REFERENCE, REFERENCE_ONLY, TableReport, reproduce_reference_table

__all__ = [
    "GRID", "HALF_GRID", "MODEL_NAMES", "REFERENCE", "REFERENCE_ONLY", "EfficiencyReport",
    "ExtrapolationError", "TableReport", "get_model", "large_deviation_coefficient",
    "limit_under_alternative", "local_derivative", "local_efficiency",
    "polya_delta2_closed_form", "polya_efficiency_closed_form", "polya_omega", "richardson",
    "reproduce_reference_table", "sup_family_projection_variance", "sup_variance",
]
