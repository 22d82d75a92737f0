"""Run configuration: precision budgets, default grids, output options.

The precision budget is the maximum number of fractional bits any certified
refinement loop may spend before raising PrecisionBudgetExceeded.  It can be
set per call, per RunConfig, or globally through the BETALAC_PRECISION_BITS
environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterator

ENV_PRECISION_BITS = "BETALAC_PRECISION_BITS"

MIN_PRECISION_BITS = 64


def _env_precision_bits(default: int = 32768) -> int:
    raw = os.environ.get(ENV_PRECISION_BITS)
    if raw is None:
        return default
    try:
        bits = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_PRECISION_BITS} must be an integer, got {raw!r}")
    return bits


def geometric_grid(start: int, stop: int, points: int) -> list[int]:
    """Sorted distinct integers roughly geometrically spaced in [start, stop]."""
    if start < 1 or stop < start or points < 1:
        raise ValueError("need 1 <= start <= stop and points >= 1")
    if points == 1 or start == stop:
        return [start] if start == stop else [start, stop]
    ratio = (stop / start) ** (1.0 / (points - 1))
    grid = sorted({min(stop, max(start, round(start * ratio**j))) for j in range(points)})
    if grid[-1] != stop:
        grid.append(stop)
    return grid


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by the certified evaluators and the CLI."""

    precision_bits: int = field(default_factory=_env_precision_bits)
    start_bits: int = 64
    grid_start: int = 100
    grid_stop: int = 10**6
    grid_points: int = 41
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.precision_bits < MIN_PRECISION_BITS:
            raise ValueError(f"precision budget must be >= {MIN_PRECISION_BITS} bits")
        if self.start_bits < MIN_PRECISION_BITS:
            raise ValueError(f"start bits must be >= {MIN_PRECISION_BITS}")
        if self.grid_points < 1 or self.grid_start < 1 or self.grid_stop < self.grid_start:
            raise ValueError("grid must be nonempty and increasing")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output format must be 'csv' or 'json'")

    def bit_schedule(self) -> Iterator[int]:
        """Doubling escalation schedule from start_bits up to the budget."""
        bits = self.start_bits
        while bits < self.precision_bits:
            yield bits
            bits *= 2
        yield self.precision_bits

    def default_grid(self) -> list[int]:
        return geometric_grid(self.grid_start, self.grid_stop, self.grid_points)

    @classmethod
    def from_json_file(cls, path: str) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        allowed = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - allowed
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)


DEFAULT_CONFIG = RunConfig()


def resolve_config(config: RunConfig | None) -> RunConfig:
    return DEFAULT_CONFIG if config is None else config
