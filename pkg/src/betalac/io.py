"""Serialization: CSV tables, run-length binary support sets, digit bytes.

The run-length format packs maximal runs of consecutive elements sharing one
multiplicity as little-endian u64 triples (start, length, multiplicity) after
an 8-byte magic and a u64 horizon + run count; byte-identical for identical
sets, so it doubles as a determinism fixture.
"""

from __future__ import annotations

import io
import struct
from fractions import Fraction

import numpy as np

from .intervals import RealEnclosure
from .sequences import SupportSet

RLE_MAGIC = b"BLSUPRL1"


def support_to_rle(support: SupportSet) -> bytes:
    runs = []
    elems = support.elements.tolist()
    mults = support.multiplicities.tolist()
    i = 0
    while i < len(elems):
        j = i
        while (
            j + 1 < len(elems)
            and elems[j + 1] == elems[j] + 1
            and mults[j + 1] == mults[i]
        ):
            j += 1
        runs.append((elems[i], j - i + 1, mults[i]))
        i = j + 1
    out = io.BytesIO()
    out.write(RLE_MAGIC)
    out.write(struct.pack("<QQ", support.horizon, len(runs)))
    for start, length, mult in runs:
        out.write(struct.pack("<QQQ", start, length, mult))
    return out.getvalue()


def support_from_rle(data: bytes) -> SupportSet:
    if data[:8] != RLE_MAGIC:
        raise ValueError("not a run-length support payload")
    horizon, nruns = struct.unpack_from("<QQ", data, 8)
    elems: list[int] = []
    mults: list[int] = []
    offset = 24
    for _ in range(nruns):
        start, length, mult = struct.unpack_from("<QQQ", data, offset)
        offset += 24
        elems.extend(range(start, start + length))
        mults.extend([mult] * length)
    return SupportSet(horizon, np.array(elems, dtype=np.int64), np.array(mults, dtype=np.int64))


def support_to_csv(support: SupportSet) -> str:
    lines = ["element,multiplicity"]
    lines.extend(
        f"{e},{m}" for e, m in zip(support.elements.tolist(), support.multiplicities.tolist())
    )
    return "\n".join(lines) + "\n"


def gap_profile_to_csv(points) -> str:
    lines = ["R,gap"]
    for p in points:
        lines.append(f"{p.r},{'' if p.gap is None else p.gap}")
    return "\n".join(lines) + "\n"


def rho_to_csv(rho: list[int]) -> str:
    lines = ["m,rho"]
    lines.extend(f"{m},{v}" for m, v in enumerate(rho))
    return "\n".join(lines) + "\n"


def enclosure_to_json(enc: RealEnclosure, digits: int = 15) -> dict:
    return enc.to_decimal(digits)


def yr_sweep_to_csv(rows: list[tuple[int, RealEnclosure, str]], digits: int = 15) -> str:
    lines = ["R,lower,upper,verdict"]
    for r, enc, verdict in rows:
        d = enc.to_decimal(digits)
        lines.append(f"{r},{d['lower']},{d['upper']},{verdict}")
    return "\n".join(lines) + "\n"


def digits_to_csv(stream) -> str:
    lines = ["n,digit"]
    lines.extend(
        f"{n},{d}" for n, d in enumerate(stream.digits, start=stream.start_index)
    )
    return "\n".join(lines) + "\n"


def digits_to_bytes(stream) -> bytes:
    """Digit stream as one byte per digit (requires digit values < 256)."""
    if any(d > 255 for d in stream.digits):
        raise ValueError("digit values exceed one byte")
    return bytes(stream.digits)


def parse_width(text: str) -> Fraction:
    w = Fraction(text)
    if w <= 0:
        raise ValueError("width must be positive")
    return w
