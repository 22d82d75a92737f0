"""Intervals with exact rational endpoints.

RealEnclosure is the carrier for every certified real quantity in the library:
an interval [lower, upper] with Fraction endpoints guaranteed to contain the
exact value.  Arithmetic is outward-exact (no rounding happens at all, since
endpoints stay rational), so enclosure containment is preserved by +, -, *.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


def as_fraction(value: RationalLike | float) -> Fraction:
    """Convert exact inputs to Fraction.

    Strings are parsed as exact decimals/rationals ("0.25", "1/3", "1e-9").
    Floats are rejected: binary floats silently misrepresent decimal inputs,
    and every public entry point of the library is supposed to be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational (Fraction/int/str), got {type(value).__name__}")


def decimal_bound(x: Fraction, digits: int, round_up: bool) -> str:
    """Decimal string with `digits` fractional digits, rounded outward."""
    scale = 10**digits
    scaled = x * scale
    n = math.ceil(scaled) if round_up else math.floor(scaled)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class RealEnclosure:
    """Interval [lower, upper] with exact rational endpoints."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self) -> None:
        if not (isinstance(self.lower, Fraction) and isinstance(self.upper, Fraction)):
            object.__setattr__(self, "lower", as_fraction(self.lower))
            object.__setattr__(self, "upper", as_fraction(self.upper))
        if self.lower > self.upper:
            raise ValueError(f"inverted enclosure: {self.lower} > {self.upper}")

    @classmethod
    def point(cls, value: RationalLike) -> "RealEnclosure":
        v = as_fraction(value)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, value: RationalLike) -> bool:
        v = as_fraction(value)
        return self.lower <= v <= self.upper

    def contains_interval(self, other: "RealEnclosure") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def sign(self) -> int | None:
        """-1 or +1 when certified, None when the interval straddles 0."""
        if self.upper < 0:
            return -1
        if self.lower > 0:
            return 1
        if self.lower == self.upper == 0:
            return 0
        return None

    def __add__(self, other: "RealEnclosure") -> "RealEnclosure":
        return RealEnclosure(self.lower + other.lower, self.upper + other.upper)

    def __sub__(self, other: "RealEnclosure") -> "RealEnclosure":
        return RealEnclosure(self.lower - other.upper, self.upper - other.lower)

    def __neg__(self) -> "RealEnclosure":
        return RealEnclosure(-self.upper, -self.lower)

    def __mul__(self, other: "RealEnclosure") -> "RealEnclosure":
        products = (
            self.lower * other.lower,
            self.lower * other.upper,
            self.upper * other.lower,
            self.upper * other.upper,
        )
        return RealEnclosure(min(products), max(products))

    def scale(self, c: RationalLike) -> "RealEnclosure":
        c = as_fraction(c)
        if c >= 0:
            return RealEnclosure(self.lower * c, self.upper * c)
        return RealEnclosure(self.upper * c, self.lower * c)

    def widen(self, radius: RationalLike) -> "RealEnclosure":
        r = as_fraction(radius)
        if r < 0:
            raise ValueError("radius must be nonnegative")
        return RealEnclosure(self.lower - r, self.upper + r)

    def excludes_integers(self) -> bool:
        """True when no integer lies in the interval."""
        return math.floor(self.lower) == math.floor(self.upper) and self.lower > math.floor(self.lower)

    def to_decimal(self, digits: int = 12) -> dict[str, str]:
        """Outward-rounded decimal endpoints; still a valid enclosure."""
        return {
            "lower": decimal_bound(self.lower, digits, round_up=False),
            "upper": decimal_bound(self.upper, digits, round_up=True),
        }

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        return f"RealEnclosure({self.lower!r}, {self.upper!r})"

    def __str__(self) -> str:
        d = self.to_decimal(15)
        return f"[{d['lower']}, {d['upper']}]"


@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned rectangle in the complex plane with rational corners."""

    re: RealEnclosure
    im: RealEnclosure

    def modulus_squared_bounds(self) -> tuple[Fraction, Fraction]:
        def axis_bounds(e: RealEnclosure) -> tuple[Fraction, Fraction]:
            lo2 = Fraction(0) if e.lower <= 0 <= e.upper else min(e.lower**2, e.upper**2)
            hi2 = max(e.lower**2, e.upper**2)
            return lo2, hi2

        rlo, rhi = axis_bounds(self.re)
        ilo, ihi = axis_bounds(self.im)
        return rlo + ilo, rhi + ihi

    def certifies_modulus_below(self, bound: RationalLike) -> bool:
        b = as_fraction(bound)
        _, hi = self.modulus_squared_bounds()
        return hi < b * b

    def certifies_modulus_above(self, bound: RationalLike) -> bool:
        b = as_fraction(bound)
        lo, _ = self.modulus_squared_bounds()
        return lo > b * b

    def is_real(self) -> bool:
        return self.im.lower == self.im.upper == 0

    def to_decimal(self, digits: int = 12) -> dict[str, dict[str, str]]:
        return {"re": self.re.to_decimal(digits), "im": self.im.to_decimal(digits)}
