"""Backend selection for the hot kernels.

The compiled extension is preferred when importable; the pure-Python module
is the fallback and the reference implementation (the two are cross-checked
in the test suite).  Set BETALAC_PURE_PYTHON=1 to force the fallback.

Kernel-facing representations:

* Minkowski sums work on packed bit vectors (`int` for the pure backend,
  uint64 word arrays for the compiled one); this module hides the packing
  and exposes element-array in/out.
* Convolutions take dense coefficient lists.  The compiled path runs in
  int64 and is only used when a conservative bound rules out overflow;
  otherwise exact big-integer Python takes over.
"""

from __future__ import annotations

import os

import numpy as np

from . import _purekernels

_INT64_SAFE = 2**62

if os.environ.get("BETALAC_PURE_PYTHON") == "1":
    _impl = _purekernels
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purekernels


def backend() -> str:
    return _impl.NAME


def _pack(elements: np.ndarray, horizon: int):
    if _impl is _purekernels:
        return _purekernels.pack(elements, horizon)
    nwords = (horizon + 63) >> 6
    dense = np.zeros(horizon, dtype=np.uint8)
    dense[np.asarray(elements, dtype=np.int64)] = 1
    packed_bytes = np.packbits(dense, bitorder="little").tobytes()
    buf = np.zeros(nwords * 8, dtype=np.uint8)
    buf[: len(packed_bytes)] = np.frombuffer(packed_bytes, dtype=np.uint8)
    return buf.view("<u8")


def _unpack(packed, horizon: int) -> np.ndarray:
    if _impl is _purekernels:
        return _purekernels.unpack(packed, horizon)
    raw = packed.view(np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little", count=horizon)).astype(np.int64)


def minkowski_pair(a: np.ndarray, b: np.ndarray, horizon: int) -> np.ndarray:
    """Sorted elements of {x + y : x in a, y in b} below `horizon`."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a = a[a < horizon]
    b = b[b < horizon]
    if a.size == 0 or b.size == 0:
        return np.empty(0, dtype=np.int64)
    # shift the denser operand by the sparser one's elements
    if b.size > a.size:
        a, b = b, a
    packed = _pack(a, horizon)
    out = _impl.shift_or(packed, b.tolist(), horizon)
    return _unpack(out, horizon)


def minkowski_fold(elements: np.ndarray, k: int, horizon: int) -> np.ndarray:
    """Sorted elements of the k-fold sumset below `horizon` (k = 0 gives {0})."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return np.array([0], dtype=np.int64)
    base = np.asarray(elements, dtype=np.int64)
    base = base[base < horizon]
    result: np.ndarray | None = None
    while k:
        if k & 1:
            result = base.copy() if result is None else minkowski_pair(result, base, horizon)
        k >>= 1
        if k:
            base = minkowski_pair(base, base, horizon)
    assert result is not None
    return result


def convolve_counts(a: list[int], b: list[int], horizon: int) -> list[int]:
    """Exact truncated convolution: out[m] = sum_{i+j=m} a[i]*b[j], m < horizon."""
    if _impl is not _purekernels and a and b:
        mag_a = max(max(a), -min(a))
        mag_b = max(max(b), -min(b))
        overlap = min(len(a), len(b))
        if mag_a * mag_b * max(overlap, 1) < _INT64_SAFE:
            out = _impl.convolve_counts_int64(
                np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), horizon
            )
            return out.tolist()
    return _purekernels.convolve_counts(a, b, horizon)
