from .factored import (
    FactoredUnit,
    RegularUnit,
    ThetaQuotient,
    factor_theta_quotient,
    in_maximal_ideal,
    value_at,
    value_at_zero,
)
from .rules import residue_of_pair, xi_rule_value

__all__ = [
    "FactoredUnit",
    "RegularUnit",
    "ThetaQuotient",
    "factor_theta_quotient",
    "in_maximal_ideal",
    "residue_of_pair",
    "value_at",
    "value_at_zero",
    "xi_rule_value",
]
