"""Horizon-bounded Minkowski sums of support sets and gap statistics.

Sums of nonnegative integers only grow, so truncating every intermediate
result to the horizon loses nothing: the folded sets stay complete below it.
Multiplicities are deliberately dropped inside sumsets (membership is all the
gap and counting queries consume); weighted representation counts live in
the series module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EmptyBelowR, HorizonExceeded
from .sequences import SupportSet


@dataclass(frozen=True)
class SumsetSpec:
    """Operands (support, fold count) to combine below a common horizon."""

    operands: tuple[tuple[SupportSet, int], ...]
    horizon: int

    def __post_init__(self) -> None:
        if not self.operands:
            raise ValueError("need at least one operand")
        object.__setattr__(self, "operands", tuple((s, int(k)) for s, k in self.operands))
        for support, k in self.operands:
            if k < 0:
                raise ValueError("fold counts must be nonnegative")
            if support.horizon < self.horizon:
                raise HorizonExceeded(
                    f"operand horizon {support.horizon} below target {self.horizon}"
                )


def _as_support(elements: np.ndarray, horizon: int) -> SupportSet:
    return SupportSet(horizon, elements, np.ones(len(elements), dtype=np.int64))


def k_fold_sum(support: SupportSet, k: int, horizon: int) -> SupportSet:
    """All sums of k elements (with repetition) below `horizon`; k=0 gives {0}."""
    if support.horizon < horizon:
        raise HorizonExceeded(f"operand horizon {support.horizon} below target {horizon}")
    return _as_support(kernels.minkowski_fold(support.elements, k, horizon), horizon)


def weighted_sum(spec: SumsetSpec) -> SupportSet:
    """Minkowski sum of the k_h-fold sums of the operands, below the horizon."""
    acc = np.array([0], dtype=np.int64)
    for support, k in spec.operands:
        folded = kernels.minkowski_fold(support.elements, k, spec.horizon)
        acc = kernels.minkowski_pair(acc, folded, spec.horizon)
    return _as_support(acc, spec.horizon)


@dataclass(frozen=True)
class GapPoint:
    r: int
    gap: int | None
    error: str | None = None


def gap_profile(support: SupportSet, sample_points) -> list[GapPoint]:
    """Exact gaps r - max{s in support : s < r} at each sample point.

    Points with no element below them are reported per point rather than
    aborting the profile.
    """
    out = []
    for r in sample_points:
        r = int(r)
        try:
            out.append(GapPoint(r, r - support.largest_below(r)))
        except EmptyBelowR:
            out.append(GapPoint(r, None, "empty_below_r"))
    return out
