"""b/c/discriminant formulas of a long Weierstrass model.

The inputs only need ring operations, so the same code serves truncated
series (Tate curve) and sympy rational functions in ``t`` (surface catalog).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

Scalar = (int, Fraction)


@dataclass(frozen=True)
class WeierstrassInvariants:
    b2: Any
    b4: Any
    b6: Any
    b8: Any
    c4: Any
    c6: Any
    disc: Any
    j: Any = None

    def map(self, fn) -> "WeierstrassInvariants":
        """Apply ``fn`` to every invariant (truncation, simplification, ...); plain numbers pass through."""

        def apply(value):
            return value if value is None or isinstance(value, Scalar) else fn(value)

        return WeierstrassInvariants(
            *(apply(getattr(self, name)) for name in ("b2", "b4", "b6", "b8", "c4", "c6", "disc")),
            j=apply(self.j),
        )


def weierstrass_invariants(a1, a2, a3, a4, a6, with_j: bool = True) -> WeierstrassInvariants:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
    disc = -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    j = c4 * c4 * c4 / disc if with_j else None
    return WeierstrassInvariants(b2, b4, b6, b8, c4, c6, disc, j)
