from .bound import BoundReport, bound_report, default_order, galois_permutations, range_table
from .cartier import cartier_matrix, hasse_coefficients, kp_coefficient, semilinear_fixed_points
from .catalog import FAMILY_NAMES, WeierstrassFamily, family_catalog
from .conditions import ConditionReport, check_cp, condition_checks, cp2_result
from .fibers import (
    FiberData,
    FiberLocation,
    LocalExpansion,
    differential_ratio,
    fiber_scan,
    kodaira_type,
    tate_parameter,
    tate_period,
)
from .forms import LogForm, kappa, logform_basis, parse_fibers

__all__ = [
    "BoundReport",
    "ConditionReport",
    "FAMILY_NAMES",
    "FiberData",
    "FiberLocation",
    "LocalExpansion",
    "LogForm",
    "WeierstrassFamily",
    "bound_report",
    "cartier_matrix",
    "check_cp",
    "condition_checks",
    "cp2_result",
    "default_order",
    "differential_ratio",
    "family_catalog",
    "fiber_scan",
    "galois_permutations",
    "hasse_coefficients",
    "kappa",
    "kodaira_type",
    "kp_coefficient",
    "logform_basis",
    "parse_fibers",
    "range_table",
    "semilinear_fixed_points",
    "tate_parameter",
    "tate_period",
]
