"""Truncated multiplication of coefficient arrays.

Series are stored as ``d`` component arrays (one per power-basis coordinate).
Small products use the schoolbook loop; larger ones pack the coefficients into
a single integer (Kronecker substitution) and let CPython's big-integer
multiplication do the work. For d > 1 each exponent gets ``2d - 1`` slots so the
polynomial product in ``y`` lands in disjoint slots before being folded back
modulo the minimal polynomial.
"""
from __future__ import annotations

from typing import Sequence

from padic_eis.arith.ring import RingSpec

SCHOOLBOOK_LIMIT = 12

Components = list[list[int]]


def _slot_bytes(modulus: int, terms: int) -> int:
    bits = 2 * (modulus - 1).bit_length() + max(terms, 1).bit_length() + 1
    return (bits + 7) // 8


def _pack(values: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in values), "little")


def _unpack(x: int, width: int, count: int) -> list[int]:
    slots = max(count, -(-x.bit_length() // (8 * width)))
    raw = x.to_bytes(width * slots, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(count)]


def mul_integers(a: Sequence[int], b: Sequence[int], length: int, modulus: int) -> list[int]:
    """First ``length`` coefficients of a*b modulo ``modulus``."""
    a = a[:length]
    b = b[:length]
    if not a or not b or length <= 0:
        return [0] * max(length, 0)
    if min(len(a), len(b)) <= SCHOOLBOOK_LIMIT:
        out = [0] * length
        for i, x in enumerate(a):
            if x:
                for j in range(min(len(b), length - i)):
                    out[i + j] += x * b[j]
        return [c % modulus for c in out]
    width = _slot_bytes(modulus, min(len(a), len(b)))
    prod = _pack(a, width) * _pack(b, width)
    return [c % modulus for c in _unpack(prod, width, length)]


def _mul_extension(spec: RingSpec, a: Components, b: Components, length: int, modulus: int) -> Components:
    d = spec.d
    stride = 2 * d - 1
    la = min(len(a[0]), length)
    lb = min(len(b[0]), length)
    out = [[0] * length for _ in range(d)]
    if la == 0 or lb == 0:
        return out
    packed_a = [0] * (la * stride)
    packed_b = [0] * (lb * stride)
    for k in range(d):
        for n in range(la):
            packed_a[n * stride + k] = a[k][n]
        for n in range(lb):
            packed_b[n * stride + k] = b[k][n]
    width = _slot_bytes(modulus, d * min(la, lb))
    prod = _pack(packed_a, width) * _pack(packed_b, width)
    raw = _unpack(prod, width, length * stride)
    for n in range(length):
        coords = spec.fold(raw[n * stride:(n + 1) * stride], modulus)
        for k in range(d):
            out[k][n] = coords[k]
    return out


def mul_components(spec: RingSpec, a: Components, b: Components, length: int, modulus: int) -> Components:
    if spec.d == 1:
        return [mul_integers(a[0], b[0], length, modulus)]
    return _mul_extension(spec, a, b, length, modulus)


def add_components(a: Components, b: Components, modulus: int) -> Components:
    return [[(x + y) % modulus for x, y in zip(ca, cb)] for ca, cb in zip(a, b)]


def neg_components(a: Components, modulus: int) -> Components:
    return [[(-x) % modulus for x in ca] for ca in a]


def inverse_components(spec: RingSpec, a: Components, length: int, modulus: int) -> Components:
    """Power-series inverse by Newton iteration g <- g(2 - a g); a[.][0] must be a unit."""
    lead = spec.inverse(tuple(c[0] for c in a), modulus)
    g = [[c] for c in lead]
    cur = 1
    while cur < length:
        cur = min(2 * cur, length)
        ag = mul_components(spec, [c[:cur] for c in a], g, cur, modulus)
        e = neg_components(ag, modulus)
        e[0][0] = (e[0][0] + 2) % modulus
        g = mul_components(spec, g, e, cur, modulus)
    return [c[:length] + [0] * (length - len(c)) for c in g]
