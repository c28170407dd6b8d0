"""Upper bound for the Galois-fixed part of H^2 from the residues of Eisenstein-type forms.

For each selected multiplicative fiber the log forms are expanded in the
local Tate parameter, decomposed, and the residue image of the Eis^(n)
lattice is computed over F_p. Its dimension bounds the rank; intersecting the
images over the Galois conjugates of the fiber labelling sharpens it.
"""
from __future__ import annotations

import logging
import math
from typing import Iterable, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from padic_eis.arith.ring import RingSpec
from padic_eis.config import cfg
from padic_eis.eis.congruence import FormExpansion, eis_image, intersect_galois
from padic_eis.eis.lambert import default_basis, lambert_decompose
from padic_eis.eis.linalg import in_span
from padic_eis.surfaces.catalog import WeierstrassFamily, family_catalog
from padic_eis.surfaces.conditions import condition_checks
from padic_eis.surfaces.fibers import (
    FiberLocation,
    LocalExpansion,
    differential_ratio,
    fibers_ring,
    tate_period,
)
from padic_eis.surfaces.forms import LogForm, kappa, logform_basis, parse_fibers
from padic_eis.utils.errors import ExtensionRequired, SurfaceError, UserInputError

log = logging.getLogger(__name__)


class ExclusionResult(BaseModel):
    vector: list[int]
    excluded: bool


class BoundReport(BaseModel):
    family: str
    k: int
    p: int
    n: int
    d: int
    fibers: list[str]
    forms: list[str]
    conditions: dict
    valid: bool
    eis_image_basis: list[list[int]]
    bound: int
    intersected_basis: list[list[int]] | None = None
    intersected_bound: int | None = None
    excluded: list[ExclusionResult] = Field(default_factory=list)
    certified_precision: int


def default_order(family: WeierstrassFamily, p: int) -> int:
    if family.shape == "ex1" and family.k == 5 and p == 11:
        return 99
    return p * p


def local_expansions(
    family: WeierstrassFamily, selection: Sequence[FiberLocation], p: int, M: int, N: int
) -> tuple[RingSpec, dict[FiberLocation, tuple[LocalExpansion, object]]]:
    """Tate period and differential ratio at every selected fiber, over one common ring."""
    degree = 1
    while True:
        spec = fibers_ring(family, selection, p, M, degree)
        try:
            out = {}
            for loc in selection:
                local = tate_period(family, loc, spec, N)
                out[loc] = (local, differential_ratio(family, local))
            return spec, out
        except ExtensionRequired as exc:
            needed = exc.minimal_degree or 2 * spec.d
            degree = math.lcm(spec.d, needed)
            if degree > cfg.max_extension_degree:
                raise
            log.info("moving to residue degree %d for %s", degree, family.name)


def form_expansions(
    family: WeierstrassFamily,
    forms: Sequence[LogForm],
    selection: Sequence[FiberLocation],
    expansions: dict,
    spec: RingSpec,
) -> list[FormExpansion]:
    """Expansions of beta * form for every form and every beta of the Z_p-basis of the ring."""
    basis = default_basis(spec)
    out = []
    for form in forms:
        series = []
        for loc in selection:
            local, lam = expansions[loc]
            ser = kappa(family, local, lam, form)
            if ser.valuation() is not None and ser.valuation() < 0:
                raise SurfaceError(f"kappa({form.label}) has a pole at {loc.label}")
            series.append(ser)
        for c, beta in enumerate(basis):
            decs = tuple(lambert_decompose(s if c == 0 else s.scale(beta)) for s in series)
            residues = tuple(dec.b0_coordinates()[0] % spec.p for dec in decs)
            if c == 0:
                expected = tuple(form.residue_at(loc) % spec.p for loc in selection)
                if residues != expected and all(loc.kind == "unity" for loc in selection):
                    raise SurfaceError(f"residues of {form.label} are {residues}, expected {expected}")
            name = form.label if c == 0 else f"z^{c} {form.label}"
            out.append(FormExpansion(name, decs, residues))
    return out


def galois_permutations(family: WeierstrassFamily, selection: Sequence[FiberLocation], embeddings: Iterable[int]):
    """Positions of the fibers after zeta -> zeta^a, for every a in the group the embeddings generate."""
    k = family.k
    gens = [a % k for a in embeddings]
    for a in gens:
        if math.gcd(a, k) != 1:
            raise UserInputError(f"embedding exponent {a} is not prime to k={k}")
    group = {1 % k}
    frontier = [1 % k]
    while frontier:
        x = frontier.pop()
        for a in gens:
            y = (x * a) % k
            if y not in group:
                group.add(y)
                frontier.append(y)
    pos = {loc: i for i, loc in enumerate(selection)}
    perms = []
    for a in sorted(group):
        perm = []
        for loc in selection:
            image = loc if loc.kind != "unity" else FiberLocation("unity", ((a * loc.index - 1) % k) + 1)
            if image not in pos:
                raise UserInputError(f"fiber selection is not stable under zeta -> zeta^{a}")
            perm.append(pos[image])
        perms.append(perm)
    return perms


def bound_report(
    family: WeierstrassFamily,
    p: int,
    n: int | None = None,
    fibers: str | Sequence[FiberLocation] = "unity",
    embeddings: Sequence[int] | None = None,
    exclude: Sequence[Sequence[int]] = (),
    M: int | None = None,
) -> BoundReport:
    conditions = condition_checks(family, p)
    valid = conditions.A_prime and conditions.B_prime
    if not valid:
        log.warning("%s k=%d p=%d: (A') or (B') fails, the bound is not valid", family.name, family.k, p)
    n = n or default_order(family, p)
    M = M or cfg.precision.working
    selection = parse_fibers(family, fibers)
    forms = logform_basis(family, selection)
    spec, expansions = local_expansions(family, selection, p, M, n + 2)
    expanded = form_expansions(family, forms, selection, expansions, spec)
    s = len(selection)
    image = eis_image(expanded, p, n, s)
    certified = min((dec.prec for f in expanded for dec in f.decompositions), default=M)
    if certified < M:
        log.info("%s k=%d p=%d: expansions certified to p^%d of p^%d", family.name, family.k, p, certified, M)
    report = BoundReport(
        family=family.name, k=family.k, p=p, n=n, d=spec.d,
        fibers=[loc.label for loc in selection], forms=[f.label for f in forms],
        conditions=conditions.model_dump(), valid=valid,
        eis_image_basis=image.tolist(), bound=len(image), certified_precision=certified,
    )
    if embeddings:
        current = image
        for perm in galois_permutations(family, selection, embeddings):
            current = intersect_galois(current, perm, p)
        report.intersected_basis = np.asarray(current).tolist()
        report.intersected_bound = len(current)
    target = report.intersected_basis if report.intersected_basis is not None else report.eis_image_basis
    for vec in exclude:
        if len(vec) != s:
            raise UserInputError(f"exclusion vector {list(vec)} needs {s} entries")
        report.excluded.append(
            ExclusionResult(vector=list(vec), excluded=not in_span(vec, target, p) if target else any(v % p for v in vec))
        )
    log.info(
        "%s k=%d p=%d n=%d: bound %d%s", family.name, family.k, p, n, report.bound,
        f", intersected {report.intersected_bound}" if embeddings else "",
    )
    return report


def range_table(name: str, ks: Iterable[int], ps: Iterable[int], n: int | None = None) -> pd.DataFrame:
    """Conditions and bounds over a (k, p) grid; pairs with p | 6k are skipped."""
    rows = []
    for k in ks:
        family = family_catalog(name, k)
        for p in ps:
            if p < 5 or k % p == 0:
                continue
            try:
                report = bound_report(family, p, n=n, embeddings=[a for a in range(1, k) if math.gcd(a, k) == 1])
            except ExtensionRequired as exc:
                log.warning("skipping k=%d p=%d: %s", k, p, exc)
                continue
            rows.append({
                "family": name, "k": k, "p": p, "n": report.n,
                "A_prime": report.conditions["A_prime"], "B_prime": report.conditions["B_prime"],
                "bound": report.bound, "intersected_bound": report.intersected_bound,
            })
    return pd.DataFrame(rows, columns=["family", "k", "p", "n", "A_prime", "B_prime", "bound", "intersected_bound"])
