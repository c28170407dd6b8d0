"""Conditions (A'), (B') and C(p) for catalog surfaces."""
from __future__ import annotations

import logging

from pydantic import BaseModel, Field

from padic_eis.arith.ring import make_ring
from padic_eis.config import cfg
from padic_eis.eis.cp2 import CP2Result, cp2_check
from padic_eis.eis.lambert import lambert_decompose
from padic_eis.qexp.gamma13 import gamma13_series
from padic_eis.surfaces.cartier import (
    check_prime,
    cartier_matrix,
    kp_coefficient,
    semilinear_fixed_points,
)
from padic_eis.surfaces.catalog import WeierstrassFamily, family_catalog
from padic_eis.surfaces.fibers import FiberLocation, fiber_scan, root_degree
from padic_eis.utils.schema import CPReport

log = logging.getLogger(__name__)


class ConditionReport(BaseModel):
    family: str
    k: int
    p: int
    A_prime: bool
    B_prime: bool
    additive_fibers: list[str] = Field(default_factory=list)
    cartier: list[list[int]] = Field(default_factory=list)
    kp: int | None = None
    cp1: bool | None = None
    ordinary: bool | None = None
    # k_p == 0 exactly when p == 3 mod 4 (k3 only)
    p_mod4_consistent: bool | None = None


def condition_checks(family: WeierstrassFamily, p: int) -> ConditionReport:
    check_prime(family, p)
    fibers = fiber_scan(family)
    additive = [f"{f.location.label}:{f.kodaira}" for f in fibers if f.kodaira != "smooth" and not f.multiplicative]
    A = cartier_matrix(family, p)
    d = max(root_degree(family, FiberLocation("unity", 1), p), 1)
    b_prime = not semilinear_fixed_points(A, p, d)
    kp = int(A[0, 0]) if A.shape[0] else None
    cp1 = ordinary = consistent = None
    if family.name == "k3":
        kp = kp_coefficient(p)
        consistent = (kp % p == 0) == (p % 4 == 3)
        if not consistent:
            log.warning("k3 at p=%d: k_p=%d does not follow the p mod 4 rule", p, kp)
    if kp is not None:
        cp1 = kp % p != 1
        ordinary = kp % p != 0
    report = ConditionReport(
        family=family.name, k=family.k, p=p, A_prime=bool(additive), B_prime=b_prime,
        additive_fibers=additive, cartier=A.tolist(), kp=kp, cp1=cp1, ordinary=ordinary,
        p_mod4_consistent=consistent,
    )
    log.info("%s k=%d p=%d: A'=%s B'=%s k_p=%s", family.name, family.k, p, report.A_prime, b_prime, kp)
    return report


def cp2_result(p: int, M: int | None = None) -> CP2Result:
    """C(p)-2 on the Lambert tables of f1, f2 and g at the fiber t = 1."""
    M = M or cfg.precision.working
    spec = make_ring(p, 1, max(M, 4))
    N = p * p + 1
    f1, f2, g = (lambert_decompose(gamma13_series(spec, name, N)) for name in ("f1", "f2", "g"))
    return cp2_check(f1, f2, g, p)


def check_cp(p: int, M: int | None = None) -> CPReport:
    """Both halves of C(p) for the k3 family."""
    check_prime(family_catalog("k3"), p)
    kp = kp_coefficient(p)
    result = cp2_result(p, M)
    cp1 = kp % p != 1
    verdict = CPReport(
        p=p, kp=kp, cp1=cp1, cp2=result.holds, holds=cp1 and result.holds, witness=result.witness,
        classes=[
            {"j": c.j, "e": c.e, "status": c.status, "residue": c.residue, "exponent": c.exponent}
            for c in result.classes
        ],
    )
    log.info("C(%d): k_p=%d cp1=%s cp2=%s", p, kp, cp1, result.holds)
    return verdict
