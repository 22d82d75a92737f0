"""Greedy digit expansions: exact orbits of x -> frac(beta*x).

The orbit is computed exactly in Q(beta); floating the orbit is not an option
because errors compound geometrically under multiplication by beta.  Only the
digit decision (a floor) consults certified enclosures, and for rational
orbit points not even that.  Integer bases are the degree-1 special case of
the same machinery, plus a plain-rational fast path with the index-0 integral
digit the positional convention demands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebraic import AlgebraicBase, FieldElement
from .config import RunConfig, resolve_config
from .errors import HorizonInsufficient, InsufficientDigits, OutOfUnitInterval
from .intervals import RealEnclosure, as_fraction


@dataclass(frozen=True)
class DigitStream:
    """Digits of an expansion, with the indexing convention of its base kind.

    Fractional-base streams index digits from 1 (there is no integral digit:
    the source lies in [0,1)); integer-base streams index from 0 with the
    integral part at index 0.
    """

    base: Union[AlgebraicBase, int]
    digits: tuple[int, ...]
    start_index: int
    source: Union[FieldElement, Fraction]

    def __post_init__(self) -> None:
        cap = self.digit_cap()
        for i, d in enumerate(self.digits):
            # the integral digit (index 0 of a positional stream) is exempt
            if i == 0 and self.start_index == 0:
                if d < 0:
                    raise ValueError("integral digit must be nonnegative")
                continue
            if d < 0 or d > cap:
                raise ValueError(f"digit {d} outside [0, {cap}]")

    def digit_cap(self) -> int:
        if isinstance(self.base, int):
            return self.base - 1
        return self.base.floor_beta()

    def digit(self, n: int) -> int:
        i = n - self.start_index
        if i < 0 or i >= len(self.digits):
            raise InsufficientDigits(f"digit index {n} outside the expanded range")
        return self.digits[i]

    def __len__(self) -> int:
        return len(self.digits)


def beta_expand(eta: FieldElement, base: AlgebraicBase, n: int, config: RunConfig | None = None) -> DigitStream:
    """First n digits of the greedy expansion of eta in the given base.

    Digit k is floor(beta * x_{k-1}) with x_k the exact orbit of the
    beta-transformation; requires eta in [0, 1), certified exactly.
    """
    config = resolve_config(config)
    if eta.base != base:
        raise ValueError("eta must be expressed over the expansion base")
    if eta.sign(config) < 0 or (eta - base.one).sign(config) >= 0:
        raise OutOfUnitInterval("expansion argument must lie in [0, 1)")
    beta = base.beta
    digits = []
    x = eta
    for _ in range(n):
        scaled = beta * x
        d = scaled.floor(config)
        digits.append(d)
        x = scaled - base.from_rational(d)
    return DigitStream(base, tuple(digits), 1, eta)


def base_b_expand(eta, b: int, n: int) -> DigitStream:
    """Exact base-b digits s_0 .. s_{n-1} of a nonnegative rational.

    s_0 is the integral part; the fractional digits are greedy, which for
    exact rational arithmetic automatically selects the canonical
    representative (never eventually b-1).
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    eta = as_fraction(eta)
    if eta < 0:
        raise OutOfUnitInterval("expansion argument must be nonnegative")
    if n < 1:
        raise ValueError("need at least the integral digit")
    s0 = math.floor(eta)
    digits = [s0]
    x = eta - s0
    for _ in range(n - 1):
        x *= b
        d = math.floor(x)
        digits.append(d)
        x -= d
    return DigitStream(b, tuple(digits), 0, eta)


def lambda_digits(stream: DigitStream, n: int) -> int:
    """Count of nonzero digits, in the convention of the stream's base kind:
    indices 1 <= k <= n for fractional bases, 0 <= k < n for integer bases."""
    if isinstance(stream.base, int):
        if n > len(stream.digits):
            raise InsufficientDigits(f"need digits below {n}, have {len(stream.digits)}")
        return sum(1 for d in stream.digits[:n] if d)
    if n > len(stream.digits):
        raise InsufficientDigits(f"need {n} digits, have {len(stream.digits)}")
    return sum(1 for d in stream.digits[:n] if d)


def reconstruct(stream: DigitStream, width, config: RunConfig | None = None) -> RealEnclosure:
    """Enclosure of the value the digits expand, partial sum plus a certified
    bound on the digits beyond the stream."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    config = resolve_config(config)
    next_index = stream.start_index + len(stream.digits)
    if isinstance(stream.base, int):
        b = stream.base
        cap = b - 1
        tail = Fraction(cap, b ** (next_index - 1)) * Fraction(1, b - 1)
        if tail >= width:
            raise HorizonInsufficient("digit stream too short for the requested width")
        partial = sum(
            Fraction(d, b**k) for k, d in enumerate(stream.digits, start=stream.start_index)
        )
        return RealEnclosure(partial, partial + tail)
    base = stream.base
    beta_lo = base.beta_lower()
    cap = base.floor_beta()
    tail = cap * beta_lo ** (-next_index) * beta_lo / (beta_lo - 1)
    if tail >= width:
        raise HorizonInsufficient("digit stream too short for the requested width")
    inv = base.inv_beta
    acc = base.zero
    for d in reversed(stream.digits):
        acc = (acc + base.from_rational(d)) * inv
    # account for start_index > 1 (never produced by beta_expand, but cheap)
    for _ in range(stream.start_index - 1):
        acc = acc * inv
    enc = acc.embed(width - tail, config)
    return RealEnclosure(enc.lower, enc.upper + tail)
