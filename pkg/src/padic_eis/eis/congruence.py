"""Residue images of formal Eisenstein spaces.

A form is given by its Lambert decomposition at every fiber and by its residue
vector. The Z_p-combinations sum x_a * form_a that satisfy (E1) and (E2)^(n) at
every fiber form a lattice; its residue vectors, reduced mod p, span the image.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from padic_eis.arith.ring import vp
from padic_eis.eis.lambert import LambertDecomposition
from padic_eis.eis.linalg import intersect, rref, solution_lattice
from padic_eis.utils.errors import CongruenceError, PrecisionError, UserInputError

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FormExpansion:
    name: str
    decompositions: tuple[LambertDecomposition, ...]
    residues: tuple[int, ...]


Constraint = tuple[list[int], int]


def eis_constraints(forms: Sequence[FormExpansion], n: int) -> list[Constraint]:
    """Rows (c, e) meaning sum_a x_a c_a == 0 mod p^e."""
    if not forms:
        return []
    fibers = len(forms[0].decompositions)
    if any(len(f.decompositions) != fibers for f in forms):
        raise CongruenceError("every form needs one decomposition per fiber")
    p = forms[0].decompositions[0].spec.p
    out: list[Constraint] = []
    for k in range(fibers):
        decs = [f.decompositions[k] for f in forms]
        spec = decs[0].spec
        prec = min(d.prec for d in decs)
        order = min(d.N for d in decs)
        if n >= order and n >= p:
            raise PrecisionError(f"fiber {k + 1}: decomposition known to q^{order - 1}, need q^{n}")
        # (E1): principal parts and the non-Z_p part of b_0 cancel
        negative = sorted({j for d in decs for j in d.principal if j < 0})
        for j in negative:
            for c in range(spec.d):
                out.append(([d.principal.get(j, spec.zero)[c] for d in decs], prec))
        if spec.d > 1:
            b0 = [d.b0_coordinates() for d in decs]
            for c in range(1, spec.d):
                out.append(([x[c] for x in b0], prec))
        for j in range(p, n + 1, p):
            e = 2 * vp(j, p)
            if e > prec:
                raise PrecisionError(f"a_(i, {j}) needs {e} digits, only {prec} are certified")
            for i in range(1, spec.d + 1):
                out.append(([d.a(i, j) for d in decs], e))
    return out


def eis_lattice(forms: Sequence[FormExpansion], n: int) -> list[list[int]]:
    if not forms:
        return []
    p = forms[0].decompositions[0].spec.p
    if n < p:
        log.warning("n=%d < p=%d: no (E2) constraints, the image is the full residue span", n, p)
    constraints = eis_constraints(forms, n)
    return solution_lattice(constraints, len(forms), p)


def eis_image(forms: Sequence[FormExpansion], p: int, n: int, s: int | None = None) -> np.ndarray:
    """Reduced echelon F_p-basis of the residue image of the Eis^(n) lattice."""
    if s is None:
        s = len(forms[0].residues) if forms else 0
    if any(len(f.residues) != s for f in forms):
        raise CongruenceError(f"residue vectors must have length {s}")
    gens = eis_lattice(forms, n)
    images = []
    for g in gens:
        v = [sum(x * f.residues[c] for x, f in zip(g, forms)) % p for c in range(s)]
        if any(v):
            images.append(v)
    if not images:
        return np.zeros((0, s), dtype=np.int64)
    basis = rref(images, p, s)[0]
    log.info("Eis^(%d) image has dimension %d in F_%d^%d", n, len(basis), p, s)
    return basis


def _check_permutation(perm: Sequence[int], s: int) -> None:
    if sorted(perm) != list(range(s)):
        raise UserInputError(f"{list(perm)} is not a permutation of 0..{s - 1}")


def translate_span(span: np.ndarray, perm: Sequence[int], p: int,
                   frob_entry: Callable[[int], int] | None = None) -> np.ndarray:
    """Image of a span under D_i -> D_perm[i], with ``frob_entry`` acting on entries."""
    s = len(perm)
    _check_permutation(perm, s)
    out = np.zeros((len(span), s), dtype=np.int64)
    for r, row in enumerate(span):
        for i, x in enumerate(row):
            out[r, perm[i]] = (frob_entry(int(x)) if frob_entry else int(x)) % p
    return out


def intersect_galois(span: np.ndarray, perm: Sequence[int], p: int,
                     frob_entry: Callable[[int], int] | None = None) -> np.ndarray:
    """Intersection of the spans in the orbit of ``perm``."""
    s = len(perm)
    _check_permutation(perm, s)
    span = np.asarray(span, dtype=np.int64).reshape(-1, s)
    current = rref(span, p, s)[0] if len(span) else span
    translated = current
    for _ in range(1, _order(perm)):
        translated = translate_span(translated, perm, p, frob_entry)
        current = intersect(current, translated, p, s)
        if not len(current):
            break
    log.debug("Galois intersection over an orbit of length %d has dimension %d", _order(perm), len(current))
    return current


def _order(perm: Sequence[int]) -> int:
    k = 1
    cur = list(perm)
    while cur != list(range(len(perm))):
        cur = [perm[i] for i in cur]
        k += 1
    return k


def power_map_permutation(indices: Sequence[int], k: int, a: int) -> list[int]:
    """The action zeta_k -> zeta_k^a on fibers labelled by t = zeta_k^i, as positions in ``indices``."""
    pos = {i % k: n for n, i in enumerate(indices)}
    try:
        return [pos[(a * i) % k] for i in indices]
    except KeyError as exc:
        raise UserInputError(f"fiber selection {list(indices)} is not stable under zeta -> zeta^{a}") from exc
