"""Logarithmic 2-forms h(t) dt dX/Y and their expansions at multiplicative fibers."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from padic_eis.series.laurent import LaurentSeries
from padic_eis.surfaces.catalog import WeierstrassFamily
from padic_eis.surfaces.fibers import ZERO, FiberLocation, LocalExpansion, fiber_value
from padic_eis.utils.errors import SurfaceError, UserInputError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LogForm:
    """t^power dt dX/Y, or dt/(t - t(pole)) dX/Y."""

    label: str
    power: int | None = None
    pole: FiberLocation | None = None

    def residue_at(self, location: FiberLocation) -> int:
        return 1 if self.pole == location else 0

    def h(self, family: WeierstrassFamily, local: LocalExpansion) -> LaurentSeries:
        """h(t(q_i)) at the fiber of ``local``."""
        if self.pole is None:
            return local.t_series ** self.power
        if self.pole == local.location:
            return local.t_of_q.inverse()
        shifted = local.t_series - fiber_value(family, self.pole, local.spec)
        if not shifted.is_unit_led() or shifted.valuation() != 0:
            raise SurfaceError(f"{self.label} is not regular at {local.location.label}")
        return shifted.inverse()


def _pole_label(family: WeierstrassFamily, loc: FiberLocation) -> str:
    if loc.kind == "zero":
        return "dt/t dX/Y"
    if loc.index % family.k == 0:
        return "dt/(t-1) dX/Y"
    if 2 * loc.index == family.k:
        return "dt/(t+1) dX/Y"
    return f"dt/(t-z^{loc.index}) dX/Y"


def parse_fibers(family: WeierstrassFamily, token: str | Sequence[FiberLocation]) -> list[FiberLocation]:
    """``unity``, ``all``, or comma-separated ``i`` (t = zeta_k^i) and ``t0``."""
    if not isinstance(token, str):
        return list(token)
    k = family.k
    unity = [FiberLocation("unity", i) for i in range(1, k + 1)]
    token = token.strip().lower()
    if token == "unity":
        return unity
    if token == "all":
        return unity + [ZERO]
    out: list[FiberLocation] = []
    for part in token.split(","):
        part = part.strip()
        if part == "t0":
            loc = ZERO
        else:
            try:
                i = int(part)
            except ValueError as exc:
                raise UserInputError(f"bad fiber token {part!r}") from exc
            if not 1 <= i <= k:
                raise UserInputError(f"fiber index {i} outside 1..{k}")
            loc = FiberLocation("unity", i)
        if loc in out:
            raise UserInputError(f"fiber {loc.label} selected twice")
        out.append(loc)
    if not out:
        raise UserInputError("empty fiber selection")
    return out


def logform_basis(family: WeierstrassFamily, selection: Sequence[FiberLocation]) -> list[LogForm]:
    """Holomorphic forms t^m dt dX/Y (m < genus) and one log form per selected fiber."""
    forms = [LogForm("dt dX/Y" if m == 0 else f"t^{m} dt dX/Y", power=m) for m in range(family.genus)]
    for loc in selection:
        if loc.kind == "infinity":
            raise UserInputError("the fiber at infinity is additive and cannot carry a log pole")
        forms.append(LogForm(_pole_label(family, loc), pole=loc))
    keys = [(f.power, f.pole) for f in forms]
    if len(set(keys)) != len(keys):
        raise SurfaceError(f"log form basis for {family.name} has repeated forms")
    return forms


def kappa(family: WeierstrassFamily, local: LocalExpansion, lam: LaurentSeries, form: LogForm) -> LaurentSeries:
    """Expansion of ``form`` at the fiber relative to dq_i/q_i du/u: h(t) (q_i dt/dq_i) lambda."""
    h = form.h(family, local)
    out = h * local.t_of_q.theta() * lam
    log.debug("kappa(%s) at %s known to q^%d", form.label, local.location.label, out.N)
    return out
