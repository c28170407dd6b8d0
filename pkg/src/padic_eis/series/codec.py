"""Binary form of a LaurentSeries for the on-disk cache.

Layout: one line of JSON header, a newline, then the coefficients column by
column (exponent-major), each coordinate as little-endian 8-byte words. When
``p^prec`` does not fit in one word every coordinate is written as a uint16
word count followed by that many words.
"""
from __future__ import annotations

import json
import logging
import struct

import numpy as np

from padic_eis.arith.ring import RingSpec, make_ring
from padic_eis.series.laurent import LaurentSeries
from padic_eis.utils.errors import SchemaError

log = logging.getLogger(__name__)

CODEC_VERSION = 1
WORD = 8


def _words_per_value(modulus: int) -> int:
    return max(1, -(-(modulus - 1).bit_length() // 64))


def encode_series(f: LaurentSeries) -> bytes:
    words = _words_per_value(f.modulus)
    header = {
        "p": f.spec.p,
        "d": f.spec.d,
        "M": f.spec.M,
        "minpoly": list(f.spec.minpoly),
        "v": f.v,
        "N": f.N,
        "label": f.label,
        "prec": f.prec,
        "version": CODEC_VERSION,
        "words": words,
    }
    head = json.dumps(header, sort_keys=True).encode("utf-8") + b"\n"
    columns = [f.column(n) for n in range(f.v, f.N)]
    flat = [x for col in columns for x in col]
    if words == 1:
        body = np.asarray(flat, dtype="<u8").tobytes()
    else:
        chunks = []
        for x in flat:
            n = max(1, -(-x.bit_length() // 64))
            chunks.append(struct.pack("<H", n))
            chunks.append(x.to_bytes(n * WORD, "little"))
        body = b"".join(chunks)
    return head + body


def decode_series(blob: bytes, spec: RingSpec | None = None) -> LaurentSeries:
    """Inverse of ``encode_series``; raises SchemaError on any inconsistency."""
    try:
        head, body = blob.split(b"\n", 1)
        header = json.loads(head.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as e:
        raise SchemaError(f"unreadable series header: {e}") from e
    if header.get("version") != CODEC_VERSION:
        raise SchemaError(f"series codec version {header.get('version')} != {CODEC_VERSION}")
    try:
        p, d, M = int(header["p"]), int(header["d"]), int(header["M"])
        v, N, prec, words = int(header["v"]), int(header["N"]), int(header["prec"]), int(header["words"])
        label = str(header["label"])
        minpoly = tuple(int(c) for c in header["minpoly"])
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"incomplete series header: {e}") from e
    spec = spec or make_ring(p, d, M)
    if (spec.p, spec.d, spec.M, spec.minpoly) != (p, d, M, minpoly):
        raise SchemaError(f"series was written for {p}, {d}, {M}, not {spec.label()}")
    count = max(N - v, 0) * d
    if words == 1:
        if len(body) != count * WORD:
            raise SchemaError(f"expected {count * WORD} payload bytes, got {len(body)}")
        flat = [int(x) for x in np.frombuffer(body, dtype="<u8", count=count)]
    else:
        flat = []
        pos = 0
        for _ in range(count):
            if pos + 2 > len(body):
                raise SchemaError("truncated multiword payload")
            (n,) = struct.unpack_from("<H", body, pos)
            pos += 2
            end = pos + n * WORD
            if end > len(body):
                raise SchemaError("truncated multiword payload")
            flat.append(int.from_bytes(body[pos:end], "little"))
            pos = end
        if pos != len(body):
            raise SchemaError("trailing bytes after series payload")
    comps = [flat[k::d] for k in range(d)]
    return LaurentSeries._build(spec, v, comps, N, label, prec)
