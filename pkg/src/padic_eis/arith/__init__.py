from .ring import (
    RingElem,
    RingSpec,
    divides_k_squared,
    frobenius,
    make_ring,
    minimal_root_degree,
    nth_root,
    residue_field,
    teichmuller_root,
    valuation,
    vp,
)

__all__ = [
    "RingElem",
    "RingSpec",
    "divides_k_squared",
    "frobenius",
    "make_ring",
    "minimal_root_degree",
    "nth_root",
    "residue_field",
    "teichmuller_root",
    "valuation",
    "vp",
]
