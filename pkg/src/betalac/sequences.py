"""Exponent sequence generators and their horizon-complete support sets.

A sequence produces nonnegative integer exponents w(m) for m >= m0.  Kinds
whose parameters are rational (PowerFloor, Geometric, ScaledFactorial,
WeightedGeometric) compute floors with pure integer arithmetic, which is
exact; the LogPower kind goes through directed-rounding interval exp/log
(mpmath.iv) with the doubling precision schedule, and refuses to guess when
an enclosure cannot be separated from an integer within budget.

Real-valued extensions (log a(R), its derivative, and the inverse function)
are exposed for the trend diagnostics; those are double-precision floats by
design, since they feed fitted statistics rather than certified claims.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from mpmath import iv, mp
from mpmath.libmp import to_rational

from .config import RunConfig, resolve_config
from .errors import (
    DomainError,
    EmptyBelowR,
    FloorTieUnresolvable,
    HorizonExceeded,
    NoClosedFormInverse,
    PrecisionBudgetExceeded,
)
from .intervals import as_fraction


# -- interval exp/log helpers -------------------------------------------------


def _iv_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _iv_endpoints(x) -> tuple[Fraction, Fraction]:
    a, b = x._mpi_
    pa, qa = to_rational(a)
    pb, qb = to_rational(b)
    return Fraction(int(pa), int(qa)), Fraction(int(pb), int(qb))


def _iv_pow(base, e: Fraction):
    """base**e for a positive interval base, via exp(e*log(base))."""
    if e.denominator == 1:
        return base ** int(e)
    return iv.exp(_iv_fraction(e) * iv.log(base))


def _integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for nonnegative integer n, integer k >= 1."""
    if n < 0:
        raise ValueError("negative radicand")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


# -- sequence kinds -----------------------------------------------------------


class ExponentSequence:
    """Common interface; concrete kinds override the hooks they support."""

    kind: str = "?"
    m0: int = 0
    leading_one: bool = False
    monotone_from: int = 0

    def term(self, m: int, config: RunConfig | None = None) -> int:
        raise NotImplementedError

    def real_le(self, m: int, bound: Fraction, config: RunConfig | None = None) -> bool:
        """Certified test: underlying real value a(m) <= bound."""
        raise NotImplementedError

    def last_index(self) -> int | None:
        return None

    # float-precision hooks for the trend diagnostics
    def log_value(self, r: float) -> float:
        raise NoClosedFormInverse(f"{self.kind} has no real-valued extension")

    def dlog_value(self, r: float) -> float:
        raise NoClosedFormInverse(f"{self.kind} has no derivative closed form")

    def inverse_value(self, r: float) -> float:
        """b(r) with a(b(r)) = r, for the real-valued extension a."""
        raise NoClosedFormInverse(f"{self.kind} has no computable inverse")

    def params(self) -> dict:
        return {}

    def to_json(self) -> dict:
        out = {"kind": self.kind, "params": self.params(), "m0": self.m0}
        return out

    def _validate_m(self, m: int) -> None:
        if m < self.m0:
            raise DomainError(f"index {m} below start index {self.m0}")

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.kind}({inner})"


class PowerFloor(ExponentSequence):
    """w(m) = floor(m**rho) for rational rho > 1 (exact integer arithmetic)."""

    kind = "PowerFloor"

    def __init__(self, rho, m0: int | None = None):
        self.rho = as_fraction(rho)
        if self.rho <= 1:
            raise DomainError("rho must exceed 1")
        self.m0 = 0 if m0 is None else int(m0)
        if self.m0 < 0:
            raise DomainError("m0 must be nonnegative")
        self.monotone_from = self.m0

    def term(self, m: int, config: RunConfig | None = None) -> int:
        self._validate_m(m)
        p, q = self.rho.numerator, self.rho.denominator
        return _integer_root(m**p, q)

    def real_le(self, m: int, bound: Fraction, config: RunConfig | None = None) -> bool:
        self._validate_m(m)
        p, q = self.rho.numerator, self.rho.denominator
        # m**(p/q) <= bound  <=>  m**p <= bound**q  (both sides nonnegative)
        if bound < 0:
            return False
        return m**p <= bound**q

    def log_value(self, r: float) -> float:
        return float(self.rho) * math.log(r)

    def dlog_value(self, r: float) -> float:
        return float(self.rho) / r

    def inverse_value(self, r: float) -> float:
        return r ** (1.0 / float(self.rho))

    def params(self) -> dict:
        return {"rho": str(self.rho)}


class LogPower(ExponentSequence):
    """w(m) = floor(exp((log m)**(1+y) * (log log m)**z)).

    (y, z) must satisfy y > 0, or y = 0 and z > 0.  The y-only family is the
    z = 0 slice (it starts at m = 1, where the value is exactly 1); the
    two-parameter family starts at m = 3 so that log log m is positive.
    """

    kind = "LogPower"

    def __init__(self, y, z=0, m0: int | None = None):
        self.y = as_fraction(y)
        self.z = as_fraction(z)
        if not (self.y > 0 or (self.y == 0 and self.z > 0)):
            raise DomainError("need y > 0, or y = 0 and z > 0")
        default_m0 = 1 if self.z == 0 else 3
        self.m0 = default_m0 if m0 is None else int(m0)
        min_m0 = 1 if self.z == 0 else 3
        if self.m0 < min_m0:
            raise DomainError(f"m0 must be >= {min_m0} for this kind")
        self.leading_one = True
        if self.z >= 0:
            self.monotone_from = self.m0
        else:
            # log-derivative positive once (1+y) log log m + z > 0
            t = math.exp(math.exp(float(-self.z / (1 + self.y))))
            self.monotone_from = max(self.m0, math.ceil(t) + 1)

    def _interval(self, m: int, prec: int) -> tuple[Fraction, Fraction]:
        old = iv.prec
        iv.prec = prec
        try:
            lm = iv.log(iv.mpf(m))
            t = _iv_pow(lm, 1 + self.y)
            if self.z != 0:
                t = t * _iv_pow(iv.log(lm), self.z)
            return _iv_endpoints(iv.exp(t))
        finally:
            iv.prec = old

    def term(self, m: int, config: RunConfig | None = None) -> int:
        self._validate_m(m)
        if m == 1:
            return 1  # exp(0) exactly
        config = resolve_config(config)
        for prec in config.bit_schedule():
            lo, hi = self._interval(m, prec)
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo == fhi:
                return flo
        raise FloorTieUnresolvable(f"floor of {self!r} at m={m} undecided within budget")

    def real_le(self, m: int, bound: Fraction, config: RunConfig | None = None) -> bool:
        self._validate_m(m)
        if m == 1:
            return bound >= 1
        config = resolve_config(config)
        for prec in config.bit_schedule():
            lo, hi = self._interval(m, prec)
            if hi <= bound:
                return True
            if lo > bound:
                return False
        raise PrecisionBudgetExceeded(f"comparison at m={m} undecided within budget")

    def log_value(self, r: float) -> float:
        lr = math.log(r)
        out = lr ** float(1 + self.y)
        if self.z != 0:
            out *= math.log(lr) ** float(self.z)
        return out

    def dlog_value(self, r: float) -> float:
        y, z = float(self.y), float(self.z)
        lr = math.log(r)
        if z == 0:
            return (1 + y) * lr**y / r
        llr = math.log(lr)
        return lr**y * llr ** (z - 1) * (z + (1 + y) * llr) / r

    def inverse_value(self, r: float) -> float:
        target = math.log(r)
        lo = max(3.0, float(self.monotone_from))
        if self.log_value(lo) >= target:
            return lo
        hi = lo * 2
        while self.log_value(hi) < target:
            hi *= 2
        for _ in range(200):
            mid = math.sqrt(lo * hi)
            if self.log_value(mid) < target:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-9 * hi:
                break
        return math.sqrt(lo * hi)

    def params(self) -> dict:
        return {"y": str(self.y), "z": str(self.z)}


class Geometric(ExponentSequence):
    """w(m) = floor(x**m) for rational x > 1."""

    kind = "Geometric"

    def __init__(self, x, m0: int | None = None):
        self.x = as_fraction(x)
        if self.x <= 1:
            raise DomainError("x must exceed 1")
        self.m0 = 0 if m0 is None else int(m0)
        if self.m0 < 0:
            raise DomainError("m0 must be nonnegative")
        self.monotone_from = self.m0

    def term(self, m: int, config: RunConfig | None = None) -> int:
        self._validate_m(m)
        return self.x.numerator**m // self.x.denominator**m

    def real_le(self, m: int, bound: Fraction, config: RunConfig | None = None) -> bool:
        self._validate_m(m)
        if bound < 0:
            return False
        return Fraction(self.x.numerator**m, self.x.denominator**m) <= bound

    def log_value(self, r: float) -> float:
        return r * math.log(float(self.x))

    def dlog_value(self, r: float) -> float:
        return math.log(float(self.x))

    def inverse_value(self, r: float) -> float:
        return math.log(r) / math.log(float(self.x))

    def params(self) -> dict:
        return {"x": str(self.x)}


class ScaledFactorial(ExponentSequence):
    """w(m) = floor(x * m!) for rational x > 0."""

    kind = "ScaledFactorial"

    def __init__(self, x, m0: int | None = None):
        self.x = as_fraction(x)
        if self.x <= 0:
            raise DomainError("x must be positive")
        self.m0 = 0 if m0 is None else int(m0)
        if self.m0 < 0:
            raise DomainError("m0 must be nonnegative")
        self.monotone_from = max(self.m0, 1)

    def term(self, m: int, config: RunConfig | None = None) -> int:
        self._validate_m(m)
        return self.x.numerator * math.factorial(m) // self.x.denominator

    def real_le(self, m: int, bound: Fraction, config: RunConfig | None = None) -> bool:
        self._validate_m(m)
        return self.x * math.factorial(m) <= bound

    def log_value(self, r: float) -> float:
        return math.log(float(self.x)) + math.lgamma(r + 1)

    def dlog_value(self, r: float) -> float:
        import mpmath

        return float(mpmath.digamma(r + 1))

    def inverse_value(self, r: float) -> float:
        target = math.log(r)
        lo, hi = 1.0, 2.0
        while self.log_value(hi) < target:
            lo, hi = hi, hi * 2
        for _ in range(100):
            mid = (lo + hi) / 2
            if self.log_value(mid) < target:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2

    def params(self) -> dict:
        return {"x": str(self.x)}


class WeightedGeometric(ExponentSequence):
    """w(m) = floor(w * k**m) for rational w > 0 and integer k >= 2."""

    kind = "WeightedGeometric"

    def __init__(self, w, k: int, m0: int | None = None):
        self.w = as_fraction(w)
        self.k = int(k)
        if self.w <= 0:
            raise DomainError("w must be positive")
        if self.k < 2:
            raise DomainError("k must be an integer >= 2")
        self.m0 = 0 if m0 is None else int(m0)
        if self.m0 < 0:
            raise DomainError("m0 must be nonnegative")
        self.monotone_from = self.m0

    def term(self, m: int, config: RunConfig | None = None) -> int:
        self._validate_m(m)
        return self.w.numerator * self.k**m // self.w.denominator

    def real_le(self, m: int, bound: Fraction, config: RunConfig | None = None) -> bool:
        self._validate_m(m)
        return self.w * self.k**m <= bound

    def log_value(self, r: float) -> float:
        return math.log(float(self.w)) + r * math.log(self.k)

    def dlog_value(self, r: float) -> float:
        return math.log(self.k)

    def inverse_value(self, r: float) -> float:
        return math.log(r / float(self.w)) / math.log(self.k)

    def params(self) -> dict:
        return {"w": str(self.w), "k": self.k}


class Explicit(ExponentSequence):
    """A finite, user-supplied exponent list (indexing starts at m0 = 0)."""

    kind = "Explicit"

    def __init__(self, terms: Sequence[int], m0: int | None = None):
        self.terms = tuple(int(t) for t in terms)
        if any(t < 0 for t in self.terms):
            raise DomainError("terms must be nonnegative")
        self.m0 = 0 if m0 is None else int(m0)
        if self.m0 != 0:
            raise DomainError("Explicit sequences index from 0")
        last_violation = -1
        for i in range(len(self.terms) - 1):
            if self.terms[i + 1] <= self.terms[i]:
                last_violation = i
        self.monotone_from = last_violation + 1

    def last_index(self) -> int | None:
        return len(self.terms) - 1

    def term(self, m: int, config: RunConfig | None = None) -> int:
        self._validate_m(m)
        if m >= len(self.terms):
            raise DomainError(f"index {m} beyond explicit list of length {len(self.terms)}")
        return self.terms[m]

    def real_le(self, m: int, bound: Fraction, config: RunConfig | None = None) -> bool:
        return Fraction(self.term(m)) <= bound

    def params(self) -> dict:
        return {"terms": list(self.terms)}


_KINDS = {
    cls.kind: cls for cls in (PowerFloor, LogPower, Geometric, ScaledFactorial, WeightedGeometric, Explicit)
}


def sequence_from_json(obj) -> ExponentSequence:
    """Build a sequence from {"kind": ..., "params": {...}, "m0": int}."""
    import json as _json

    if isinstance(obj, str):
        obj = _json.loads(obj)
    kind = obj.get("kind")
    if kind not in _KINDS:
        raise DomainError(f"unknown sequence kind {kind!r}; expected one of {sorted(_KINDS)}")
    params = dict(obj.get("params", {}))
    m0 = obj.get("m0")
    cls = _KINDS[kind]
    if kind == "Explicit":
        return cls(params.get("terms", []), m0=m0)
    if kind == "WeightedGeometric":
        return cls(params["w"], int(params["k"]), m0=m0)
    if kind == "LogPower":
        return cls(params["y"], params.get("z", 0), m0=m0)
    (value,) = params.values()
    return cls(value, m0=m0)


# -- support sets -------------------------------------------------------------


@dataclass(frozen=True)
class SupportSet:
    """Sorted distinct exponents below a horizon, with multiplicities.

    Complete below the horizon: every index m whose exponent lands under the
    horizon contributed.  The multiplicity of an element is the number of
    indices producing it (plus one for a leading constant term, merged at 0).
    """

    horizon: int
    elements: np.ndarray
    multiplicities: np.ndarray

    def __post_init__(self) -> None:
        elems = np.asarray(self.elements, dtype=np.int64)
        mults = np.asarray(self.multiplicities, dtype=np.int64)
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "multiplicities", mults)
        if elems.shape != mults.shape:
            raise ValueError("elements and multiplicities must be parallel")
        if elems.size and (np.any(np.diff(elems) <= 0) or elems[0] < 0):
            raise ValueError("elements must be sorted, distinct, nonnegative")
        if elems.size and elems[-1] >= self.horizon:
            raise ValueError("elements must lie below the horizon")
        if np.any(mults <= 0):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def from_elements(cls, elements, horizon: int, multiplicities=None) -> "SupportSet":
        elems = [int(e) for e in elements]
        if multiplicities is None:
            pairs = sorted((e, 1) for e in elems)
        else:
            pairs = sorted(zip(elems, (int(m) for m in multiplicities)))
        return cls(
            horizon,
            np.array([e for e, _ in pairs], dtype=np.int64),
            np.array([m for _, m in pairs], dtype=np.int64),
        )

    def __len__(self) -> int:
        return int(self.elements.size)

    def __contains__(self, n: int) -> bool:
        i = int(np.searchsorted(self.elements, n))
        return i < len(self.elements) and int(self.elements[i]) == n

    @property
    def max_multiplicity(self) -> int:
        return int(self.multiplicities.max()) if len(self) else 0

    @property
    def min_element(self) -> int:
        if not len(self):
            raise EmptyBelowR("support set is empty")
        return int(self.elements[0])

    def count_below(self, n: int) -> int:
        if n > self.horizon:
            raise HorizonExceeded(f"count below {n} exceeds horizon {self.horizon}")
        return int(np.searchsorted(self.elements, min(n, self.horizon), side="left"))

    def largest_below(self, r: int) -> int:
        if r > self.horizon:
            raise HorizonExceeded(f"query at {r} exceeds horizon {self.horizon}")
        if not len(self) or r <= int(self.elements[0]):
            raise EmptyBelowR(f"no element strictly below {r}")
        i = int(np.searchsorted(self.elements, r, side="left"))
        return int(self.elements[i - 1])

    def coefficient_list(self, horizon: int | None = None) -> list[int]:
        """Dense list t with t[n] = multiplicity of n (0 where absent)."""
        h = self.horizon if horizon is None else horizon
        if h > self.horizon:
            raise HorizonExceeded("cannot densify beyond the set's horizon")
        out = [0] * h
        for e, m in zip(self.elements.tolist(), self.multiplicities.tolist()):
            if e < h:
                out[e] = m
        return out

    def restrict(self, horizon: int) -> "SupportSet":
        if horizon > self.horizon:
            raise HorizonExceeded("cannot extend a support set by restriction")
        keep = self.elements < horizon
        return SupportSet(horizon, self.elements[keep], self.multiplicities[keep])


def support_up_to(seq: ExponentSequence, n: int, config: RunConfig | None = None) -> SupportSet:
    """Horizon-complete support of the formal series attached to `seq`."""
    if n < 1:
        raise DomainError("horizon must be >= 1")
    counts: Counter[int] = Counter()
    if seq.leading_one:
        counts[0] += 1
    last = seq.last_index()
    m = seq.m0
    while last is None or m <= last:
        w = seq.term(m, config)
        if w < n:
            counts[w] += 1
        elif m >= seq.monotone_from:
            break
        m += 1
    elems = sorted(counts)
    mults = [counts[e] for e in elems]
    return SupportSet(n, np.array(elems, dtype=np.int64), np.array(mults, dtype=np.int64))


def lambda_count(support: SupportSet, n: int) -> int:
    """Number of support elements in [0, n)."""
    return support.count_below(n)


def theta(r: int, support: SupportSet) -> int:
    """Largest support element strictly below r."""
    return support.largest_below(r)


def inverse_count(seq: ExponentSequence, r: int, config: RunConfig | None = None) -> int:
    """Number of indices m >= m0 whose underlying real value is <= r."""
    bound = as_fraction(r)
    first = seq.term(seq.m0, config)
    if bound < first:
        raise DomainError(f"r={r} below the first term {first}")
    count = 0
    last = seq.last_index()
    m = seq.m0
    while last is None or m <= last:
        if seq.real_le(m, bound, config):
            count += 1
        elif m >= seq.monotone_from:
            break
        m += 1
    return count


def psi(y, r, dps: int = 40) -> float:
    """exp((log r)**(1/(1+y))): the inverse of the z = 0 log-power growth map.

    Round trip: plugging the result back into the growth map returns r, up to
    double-precision tolerance.
    """
    yq = as_fraction(y)
    if yq < 0:
        raise DomainError("y must be nonnegative")
    rf = float(r) if not isinstance(r, str) else float(Fraction(r))
    if rf <= 1:
        raise DomainError("r must exceed 1")
    with mp.workdps(dps):
        return float(mp.exp(mp.log(rf) ** (1 / (1 + mp.mpf(yq.numerator) / yq.denominator))))
