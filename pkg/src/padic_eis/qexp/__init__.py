from .gamma13 import GAMMA13_NAMES, chi3, gamma13_series
from .level1 import LEVEL1_NAMES, divisor_series, level1_series, tate_coeffs, tate_invariants
from .theta_values import (
    DlogIntegrality,
    check_dlog_integrality,
    q0_power,
    s_alpha_series,
    theta_value,
    xi_closed_value,
)
from .twovar import TwoVarSeries, decode_twovar, encode_twovar, tate_xy, theta_series
from .weierstrass import WeierstrassInvariants, weierstrass_invariants

__all__ = [
    "DlogIntegrality",
    "GAMMA13_NAMES",
    "LEVEL1_NAMES",
    "TwoVarSeries",
    "WeierstrassInvariants",
    "check_dlog_integrality",
    "chi3",
    "decode_twovar",
    "divisor_series",
    "encode_twovar",
    "gamma13_series",
    "level1_series",
    "q0_power",
    "s_alpha_series",
    "tate_coeffs",
    "tate_invariants",
    "tate_xy",
    "theta_series",
    "theta_value",
    "weierstrass_invariants",
    "xi_closed_value",
]
