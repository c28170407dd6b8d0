from .congruence import (
    FormExpansion,
    eis_constraints,
    eis_image,
    eis_lattice,
    intersect_galois,
    power_map_permutation,
    translate_span,
)
from .cp2 import CongruenceClass, CP2Result, congruence_class, cp2_check
from .lambert import (
    LambertDecomposition,
    decomposition_from_table,
    default_basis,
    lambert_decompose,
    resum,
)
from .verdict import E2Failure, EisVerdict, e1_holds, e2_status, eisenstein_report

__all__ = [
    "CP2Result",
    "CongruenceClass",
    "E2Failure",
    "EisVerdict",
    "FormExpansion",
    "LambertDecomposition",
    "congruence_class",
    "cp2_check",
    "decomposition_from_table",
    "default_basis",
    "e1_holds",
    "e2_status",
    "eis_constraints",
    "eis_image",
    "eis_lattice",
    "eisenstein_report",
    "intersect_galois",
    "lambert_decompose",
    "power_map_permutation",
    "resum",
    "translate_span",
]
