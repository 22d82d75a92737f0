"""Certified values of sparse power series at 1/beta, representation-count
convolutions, and the tail quantities attached to candidate relation
polynomials.

Everything here follows one discipline: partial sums are computed exactly in
Q(beta), truncation errors are majorized in exact rational arithmetic
(coefficient bound times a polynomial-times-geometric tail summed in closed
form), and only the final embedding step turns the exact element into an
interval.  The tail quantity

    Y_R = sum_k A_k sum_{m >= 1} rho(k; m+R) beta^{-m}

is well defined for any candidate polynomial P = sum_k A_k X^k; nothing
assumes P vanishes at the series values.  It satisfies the exact one-step
recurrence  beta * Y_{R-1} = sum_k A_k rho(k; R) + Y_R,  which the residual
checker verifies with enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import kernels
from .algebraic import AlgebraicBase, FieldElement
from .config import RunConfig, resolve_config
from .errors import HorizonExceeded, HorizonInsufficient
from .intervals import RealEnclosure, as_fraction
from .sequences import ExponentSequence, SupportSet, support_up_to


@dataclass(frozen=True)
class SeriesSpec:
    """A truncated series: support with multiplicities as coefficients, plus
    the coefficient bound the truncation promises to respect."""

    support: SupportSet
    coefficient_bound: int

    def __post_init__(self) -> None:
        if self.coefficient_bound < 1:
            raise ValueError("coefficient bound must be >= 1")
        if self.support.max_multiplicity > self.coefficient_bound:
            raise ValueError(
                f"coefficient {self.support.max_multiplicity} exceeds bound {self.coefficient_bound}"
            )

    @classmethod
    def from_sequence(
        cls,
        seq: ExponentSequence,
        horizon: int,
        coefficient_bound: int | None = None,
        config: RunConfig | None = None,
    ) -> "SeriesSpec":
        support = support_up_to(seq, horizon, config)
        bound = coefficient_bound if coefficient_bound is not None else max(1, support.max_multiplicity)
        return cls(support, bound)

    @property
    def horizon(self) -> int:
        return self.support.horizon


@dataclass(frozen=True)
class SeriesValue:
    enclosure: RealEnclosure
    horizon_used: int
    tail_bound: Fraction


def _geometric_tail(bound: int, beta_lower: Fraction, n: int) -> Fraction:
    """Upper bound for sum_{j >= n} bound * beta^{-j}, using the rational
    lower bound for beta (the bound is monotone decreasing in beta)."""
    return bound * beta_lower ** (-n) * beta_lower / (beta_lower - 1)


def _horizon_for_tail(bound: int, beta_lower: Fraction, budget: Fraction) -> int:
    n = 1
    while _geometric_tail(bound, beta_lower, n) >= budget:
        n *= 2
        if n > 10**9:
            raise HorizonInsufficient("tail budget unreachable", needed=n)
    return n


def evaluate(
    spec: SeriesSpec,
    base: AlgebraicBase,
    width,
    config: RunConfig | None = None,
) -> SeriesValue:
    """Enclosure of sum_n t_n beta^{-n} over the truncated support, plus a
    certified bound for everything the truncation may have cut off."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    config = resolve_config(config)
    n = spec.horizon
    beta_lo = base.beta_lower()
    tail = _geometric_tail(spec.coefficient_bound, beta_lo, n)
    if tail >= width:
        raise HorizonInsufficient(
            f"horizon {n} leaves tail {float(tail):.3g} >= width {float(width):.3g}",
            needed=_horizon_for_tail(spec.coefficient_bound, beta_lo, width / 2),
        )
    partial = _partial_sum(spec.support, base)
    enc = partial.embed(width - tail, config)
    return SeriesValue(RealEnclosure(enc.lower, enc.upper + tail), n, tail)


def _partial_sum(support: SupportSet, base: AlgebraicBase) -> FieldElement:
    inv = base.inv_beta
    acc = base.zero
    power = base.one
    last = 0
    for e, t in zip(support.elements.tolist(), support.multiplicities.tolist()):
        power = power * inv ** (e - last)
        last = e
        acc = acc + power.scale(t)
    return acc


# -- representation-count convolutions ----------------------------------------


def total_degree(k: Sequence[int]) -> int:
    return sum(int(v) for v in k)


def rho_coefficients(
    specs: Sequence[SeriesSpec],
    k: Sequence[int],
    horizon: int,
) -> list[int]:
    """Exact weighted representation counts rho(k; m) for m < horizon.

    rho(k; m) is the coefficient of X^m in prod_i f_i(X)^{k_i} where f_i is
    the truncated series of specs[i]; computed by iterated truncated
    convolution in exact integer arithmetic.
    """
    k = tuple(int(v) for v in k)
    if len(k) != len(specs):
        raise ValueError("one exponent per series required")
    if any(v < 0 for v in k):
        raise ValueError("exponents must be nonnegative")
    for spec in specs:
        if spec.horizon < horizon:
            raise HorizonExceeded(
                f"spec horizon {spec.horizon} below requested horizon {horizon}"
            )
    out = [1] + [0] * (horizon - 1)
    for spec, ki in zip(specs, k):
        if ki == 0:
            continue
        arr = spec.support.coefficient_list(horizon)
        powed = _convolve_power(arr, ki, horizon)
        out = kernels.convolve_counts(out, powed, horizon)
    _assert_rho_bounds(specs, k, out)
    return out


def _convolve_power(arr: list[int], k: int, horizon: int) -> list[int]:
    result: list[int] | None = None
    base = arr
    while k:
        if k & 1:
            result = base if result is None else kernels.convolve_counts(result, base, horizon)
        k >>= 1
        if k:
            base = kernels.convolve_counts(base, base, horizon)
    assert result is not None
    return result


def _assert_rho_bounds(specs: Sequence[SeriesSpec], k: tuple[int, ...], rho: list[int]) -> None:
    # pointwise bound rho(k;m) <= prod C_i^{k_i} * (1+m)^{|k|} and the prefix
    # bound sum_{m<N} rho <= prod C_i^{k_i} * prod lambda_i(N)^{k_i}
    kd = total_degree(k)
    coeff = 1
    for spec, ki in zip(specs, k):
        coeff *= spec.coefficient_bound**ki
    running = 0
    for m, value in enumerate(rho):
        assert value <= coeff * (1 + m) ** kd, f"pointwise count bound violated at m={m}"
        if value:
            running += value
            n = m + 1
            lam_prod = 1
            for spec, ki in zip(specs, k):
                lam_prod *= spec.support.count_below(min(n, spec.horizon)) ** ki
            assert running <= coeff * lam_prod, f"prefix count bound violated at N={n}"


# -- relation polynomials and tail quantities ---------------------------------


class RelationPolynomial:
    """sum_k A_k X^k with nonzero coefficients A_k in Z[beta] (integer
    power-basis coordinates) and k running over distinct exponent vectors."""

    def __init__(self, base: AlgebraicBase, terms: Mapping[tuple[int, ...], Sequence]):
        self.base = base
        canon: dict[tuple[int, ...], FieldElement] = {}
        arity = None
        for kvec, coeff in terms.items():
            kvec = tuple(int(v) for v in kvec)
            if arity is None:
                arity = len(kvec)
            if len(kvec) != arity:
                raise ValueError("all exponent vectors must share one arity")
            if any(v < 0 for v in kvec):
                raise ValueError("exponents must be nonnegative")
            elem = coeff if isinstance(coeff, FieldElement) else base.element(coeff)
            if elem.base != base:
                raise ValueError("coefficient base mismatch")
            if elem.is_zero():
                raise ValueError("coefficients must be nonzero")
            if any(c.denominator != 1 for c in elem.coeffs):
                raise ValueError("coefficients must have integer power-basis coordinates")
            canon[kvec] = elem
        if not canon:
            raise ValueError("need at least one term")
        self.terms = canon
        self.arity = arity

    @property
    def degree(self) -> int:
        return max(total_degree(k) for k in self.terms)

    @classmethod
    def from_json(cls, base: AlgebraicBase, obj) -> "RelationPolynomial":
        import json as _json

        if isinstance(obj, str):
            obj = _json.loads(obj)
        terms = {tuple(entry["k"]): [str(c) for c in entry["coeff"]] for entry in obj}
        return cls(base, terms)


class RelationEvaluator:
    """Shared machinery for Y_R sweeps: caches the rho arrays per exponent
    vector and extends them on demand."""

    def __init__(self, specs: Sequence[SeriesSpec], poly: RelationPolynomial, config: RunConfig | None = None):
        if poly.arity != len(specs):
            raise ValueError(f"polynomial arity {poly.arity} != number of series {len(specs)}")
        self.specs = list(specs)
        self.poly = poly
        self.base = poly.base
        self.config = resolve_config(config)
        self._rho: dict[tuple[int, ...], list[int]] = {}
        self._rho_horizon = 0
        self._coeff_bounds = {
            kvec: self._abs_upper(elem) for kvec, elem in poly.terms.items()
        }

    def _abs_upper(self, elem: FieldElement) -> Fraction:
        enc = elem.embed(Fraction(1, 2**16), self.config)
        return max(abs(enc.lower), abs(enc.upper))

    def _ensure_rho(self, horizon: int) -> None:
        if horizon <= self._rho_horizon:
            return
        for spec in self.specs:
            if spec.horizon < horizon:
                raise HorizonInsufficient(
                    f"series horizon {spec.horizon} below required {horizon}; "
                    "rebuild the supports with a larger horizon",
                    needed=horizon,
                )
        for kvec in self.poly.terms:
            self._rho[kvec] = rho_coefficients(self.specs, kvec, horizon)
        self._rho_horizon = horizon

    def _per_term_tail(self, kvec: tuple[int, ...], r: int, m: int) -> Fraction | None:
        """Bound for |sum_{j > m} rho(k; j+r) beta^{-j}| without the A_k factor.

        Majorizes rho(k; j+r) by prod C_i^{k_i} (1+j+r)^{|k|} and sums the
        polynomial-times-geometric series in closed form; returns None when m
        is still too small for the geometric ratio to win.
        """
        kd = total_degree(kvec)
        coeff = 1
        for spec, ki in zip(self.specs, kvec):
            coeff *= spec.coefficient_bound**ki
        x = 1 / self.base.beta_lower()
        c = r + m + 2
        q = Fraction(c + 1, c) ** kd * x
        if q >= 1:
            return None
        first = Fraction(coeff) * Fraction(c) ** kd * x ** (m + 1)
        return first / (1 - q)

    def _choose_tail_terms(self, r: int, budget: Fraction) -> tuple[int, Fraction]:
        m = 16
        while True:
            total = Fraction(0)
            ok = True
            for kvec, bound in self._coeff_bounds.items():
                t = self._per_term_tail(kvec, r, m)
                if t is None:
                    ok = False
                    break
                total += bound * t
            if ok and total <= budget:
                return m, total
            m *= 2
            if m > 10**8:
                raise HorizonInsufficient("tail budget unreachable", needed=m)

    def _partial(self, r: int, m: int) -> FieldElement:
        inv = self.base.inv_beta
        total = self.base.zero
        for kvec, coeff in self.poly.terms.items():
            rho = self._rho[kvec]
            acc = self.base.zero
            for j in range(m, 0, -1):
                acc = acc * inv
                v = rho[r + j]
                if v:
                    acc = acc + self.base.from_rational(v)
            total = total + coeff * (acc * inv)
        return total

    def value(self, r: int, width) -> RealEnclosure:
        """Certified enclosure of Y_r."""
        width = as_fraction(width)
        if r < 0:
            raise ValueError("r must be nonnegative")
        m, tail = self._choose_tail_terms(r, width / 4)
        self._ensure_rho(r + m + 1)
        partial = self._partial(r, m)
        enc = partial.embed(width / 2, self.config)
        return enc.widen(tail)

    def relation_row(self, r: int) -> FieldElement:
        """sum_k A_k rho(k; r), exactly."""
        self._ensure_rho(r + 1)
        total = self.base.zero
        for kvec, coeff in self.poly.terms.items():
            v = self._rho[kvec][r]
            if v:
                total = total + coeff.scale(v)
        return total

    def recurrence_residual(self, r: int, width) -> RealEnclosure:
        """Enclosure of beta*Y_{r-1} - sum_k A_k rho(k;r) - Y_r; contains 0."""
        width = as_fraction(width)
        if r < 1:
            raise ValueError("r must be >= 1")
        scale = self.base.floor_beta() + 2
        w = width / (4 * scale)
        y_prev = self.value(r - 1, w)
        y_cur = self.value(r, w)
        row = self.relation_row(r).embed(w, self.config)
        beta_iv = self.base.beta_enclosure(width=w)
        return beta_iv * y_prev - row - y_cur

    def decide_threshold(self, r: int, attempts: int = 5) -> bool | None:
        """Certified decision of Y_r >= 1/beta; None when the enclosure still
        straddles the threshold at the deepest attempted precision."""
        inv = self.base.inv_beta
        width = Fraction(1, 2**16)
        for _ in range(attempts):
            m, tail = self._choose_tail_terms(r, width / 4)
            self._ensure_rho(r + m + 1)
            diff = self._partial(r, m) - inv
            enc = diff.embed(width / 2, self.config).widen(tail)
            if enc.lower >= 0:
                return True
            if enc.upper < 0:
                return False
            width /= 2**8
        return None

    def count_at_least_inv_beta(self, n: int, attempts: int = 5) -> tuple[int, list[int]]:
        """Count r < n with Y_r certified >= 1/beta; undecided r are listed."""
        count = 0
        undecided: list[int] = []
        for r in range(n):
            verdict = self.decide_threshold(r, attempts)
            if verdict is None:
                undecided.append(r)
            elif verdict:
                count += 1
        return count, undecided

    def sweep(self, n: int, width, attempts: int = 5) -> list[tuple[int, RealEnclosure, str]]:
        """(r, enclosure of Y_r, threshold verdict) for r = 0 .. n-1."""
        rows = []
        for r in range(n):
            enc = self.value(r, width)
            verdict = self.decide_threshold(r, attempts)
            label = "indeterminate" if verdict is None else ("ge_inv_beta" if verdict else "lt_inv_beta")
            rows.append((r, enc, label))
        return rows


def y_r_value(specs, poly: RelationPolynomial, r: int, width, config: RunConfig | None = None) -> RealEnclosure:
    return RelationEvaluator(specs, poly, config).value(r, width)


def y_r_recurrence_check(specs, poly: RelationPolynomial, r: int, width, config: RunConfig | None = None) -> RealEnclosure:
    return RelationEvaluator(specs, poly, config).recurrence_residual(r, width)


def y_n_count(specs, poly: RelationPolynomial, n: int, config: RunConfig | None = None) -> tuple[int, list[int]]:
    return RelationEvaluator(specs, poly, config).count_at_least_inv_beta(n)
