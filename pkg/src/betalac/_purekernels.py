"""Pure-Python kernel fallback.

Bit vectors are Python big integers (shift/or on them run in C inside the
interpreter); convolution uses exact Python integers, so there is no overflow
regime at all in this backend.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def pack(elements: np.ndarray, horizon: int) -> int:
    dense = np.zeros(horizon, dtype=np.uint8)
    dense[np.asarray(elements, dtype=np.int64)] = 1
    return int.from_bytes(np.packbits(dense, bitorder="little").tobytes(), "little")


def unpack(bits: int, horizon: int) -> np.ndarray:
    nbytes = (horizon + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little", count=horizon)).astype(np.int64)


def shift_or(packed: int, shifts, horizon: int) -> int:
    mask = (1 << horizon) - 1
    out = 0
    for s in shifts:
        out |= packed << int(s)
    return out & mask


def convolve_counts(a: list[int], b: list[int], horizon: int) -> list[int]:
    out = [0] * horizon
    for i, ai in enumerate(a):
        if ai == 0 or i >= horizon:
            continue
        jmax = min(len(b), horizon - i)
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out
