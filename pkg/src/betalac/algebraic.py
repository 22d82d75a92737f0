"""Pisot/Salem bases and exact arithmetic in the number field they generate.

A base is given by its monic integer minimal polynomial.  Field elements are
power-basis coordinate vectors with exact rational entries; arithmetic reduces
canonically modulo the minimal polynomial, so equality of elements is equality
of coordinate vectors.  All real comparisons (sign, floor, interval embedding)
are certified: the only approximate object is the bracketing interval around
the distinguished root > 1, and it is refined by exact-sign bisection until
the query is decided or the precision budget runs out.

Classification is fully rigorous:

* the distinguished real root and all real conjugates are isolated by Sturm
  counts and exact bisection;
* complex conjugates get rational bounding boxes (delegated to sympy's
  certified complex root isolation) that are refined until every modulus
  comparison against 1 is decided;
* for self-reciprocal polynomials, where conjugates may sit exactly on the
  unit circle and no amount of box refinement can decide, the half-degree
  trace substitution y = x + 1/x turns the question into exact real root
  counting: degree-2n palindromes are Salem iff the trace polynomial has one
  real root above 2 and n-1 real roots inside (-2, 2).
"""

from __future__ import annotations

import enum
import json
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .config import RunConfig, resolve_config
from .errors import (
    BaseMismatch,
    ClassificationError,
    NoRootAboveOne,
    NotMonic,
    PrecisionBudgetExceeded,
    Reducible,
)
from .intervals import ComplexBox, RealEnclosure, as_fraction
from .polys import (
    cauchy_bound,
    count_roots,
    isolate_real_roots,
    poly_eval,
    poly_eval_interval,
    refine_root,
    sturm_chain,
)


class Classification(enum.Enum):
    PISOT = "Pisot"
    SALEM = "Salem"
    NEITHER = "Neither"


class BasePolynomial:
    """Monic integer polynomial, irreducible over Q, ascending coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        coeffs = tuple(int(c) for c in coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise NotMonic("a base polynomial needs degree >= 1")
        if coeffs[-1] != 1:
            raise NotMonic(f"leading coefficient is {coeffs[-1]}, expected 1")
        self.coefficients = coeffs
        if not self._is_irreducible():
            raise Reducible(f"{self} factors over the rationals")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def _is_irreducible(self) -> bool:
        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(self.coefficients)), x, domain="ZZ")
        return bool(poly.is_irreducible)

    def is_palindromic(self) -> bool:
        return self.coefficients == tuple(reversed(self.coefficients))

    def eval(self, x: Fraction) -> Fraction:
        return poly_eval(self.coefficients, x)

    @classmethod
    def from_json(cls, text: str) -> "BasePolynomial":
        raw = json.loads(text)
        if not isinstance(raw, list):
            raise ValueError("polynomial JSON must be an array of integers")
        return cls(int(str(entry)) for entry in raw)

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coefficients])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BasePolynomial) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"BasePolynomial({list(self.coefficients)})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            term = "1" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if i > 0 and abs(c) != 1:
                term = f"{abs(c)}*{term}"
            elif i == 0:
                term = str(abs(c))
            parts.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(parts).lstrip("+ ")
        return text or "0"


def _trace_polynomial(coeffs: Sequence[int]) -> list[Fraction]:
    """q with p(x) = x^n q(x + 1/x) for a palindromic p of degree 2n."""
    d = len(coeffs) - 1
    if d % 2 != 0:
        raise ValueError("trace substitution needs even degree")
    n = d // 2
    # v[j] represents x^j + x^-j as a polynomial in y = x + 1/x
    v_prev = [Fraction(2)]
    v_curr = [Fraction(0), Fraction(1)]
    q = [Fraction(coeffs[n])]

    def add(acc: list[Fraction], poly: list[Fraction], c: Fraction) -> list[Fraction]:
        out = list(acc) + [Fraction(0)] * (len(poly) - len(acc))
        for i, p in enumerate(poly):
            out[i] += c * p
        return out

    for j in range(1, n + 1):
        if j > 1:
            shifted = [Fraction(0)] + v_curr
            v_prev, v_curr = v_curr, [s - p for s, p in zip(shifted, list(v_prev) + [Fraction(0)] * (len(shifted) - len(v_prev)))]
        q = add(q, v_curr, Fraction(coeffs[n + j]))
    return q


def _sympy_complex_boxes(coeffs: Sequence[int], eps: Fraction) -> list[ComplexBox]:
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, domain="ZZ")
    _real, complex_parts = poly.intervals(all=True, eps=sympy.Rational(eps.numerator, eps.denominator))
    boxes = []
    for (c1, c2), _mult in complex_parts:
        res = sorted(Fraction(int(v.p), int(v.q)) for v in (sympy.re(c1), sympy.re(c2)))
        ims = sorted(Fraction(int(v.p), int(v.q)) for v in (sympy.im(c1), sympy.im(c2)))
        boxes.append(ComplexBox(RealEnclosure(res[0], res[1]), RealEnclosure(ims[0], ims[1])))
    return boxes


class _Analysis:
    __slots__ = ("classification", "beta_bracket", "real_conjugates", "complex_boxes")

    def __init__(self, classification, beta_bracket, real_conjugates, complex_boxes):
        self.classification = classification
        self.beta_bracket = beta_bracket
        self.real_conjugates = real_conjugates
        self.complex_boxes = complex_boxes


def _analyze(poly: BasePolynomial, config: RunConfig) -> _Analysis:
    coeffs = poly.coefficients
    if poly.degree == 1:
        root = Fraction(-coeffs[0])
        if root <= 1:
            raise NoRootAboveOne(f"{poly} has no real root above 1")
        return _Analysis(Classification.PISOT, (root, root), [], [])

    chain = sturm_chain(coeffs)
    bound = cauchy_bound(coeffs)
    n_above = count_roots(chain, Fraction(1), bound)
    if n_above == 0:
        raise NoRootAboveOne(f"{poly} has no real root above 1")
    brackets = isolate_real_roots(coeffs)
    if n_above > 1:
        beta_bracket = max(brackets)
        others = [b for b in brackets if b != beta_bracket]
        return _Analysis(Classification.NEITHER, beta_bracket, others, _sympy_complex_boxes(coeffs, Fraction(1, 2**16)))
    # exactly one real root above 1; it is the largest real root, so tighten
    # the rightmost bracket until it sits strictly above 1
    lo, hi = max(brackets)
    while lo <= 1:
        lo, hi = refine_root(coeffs, lo, hi, (hi - lo) / 2)
        if lo == hi:
            break
    beta_bracket = (lo, hi)
    real_conjugates = [b for b in brackets if b[1] <= beta_bracket[0]]

    if poly.is_palindromic():
        classification = _classify_palindromic(poly)
        boxes = _sympy_complex_boxes(coeffs, Fraction(1, 2**16))
        return _Analysis(classification, beta_bracket, real_conjugates, boxes)

    # no conjugate can lie exactly on the unit circle, so refinement decides
    for bits in config.bit_schedule():
        eps = Fraction(1, 2**bits)
        refined_real = [refine_root(coeffs, a, b, eps) for a, b in real_conjugates]
        boxes = _sympy_complex_boxes(coeffs, eps)
        all_boxes = [
            ComplexBox(RealEnclosure(a, b), RealEnclosure.point(0)) for a, b in refined_real
        ] + boxes
        below = [b.certifies_modulus_below(1) for b in all_boxes]
        above_one = [b.certifies_modulus_above(1) for b in all_boxes]
        if any(above_one):
            return _Analysis(Classification.NEITHER, beta_bracket, refined_real, boxes)
        if all(below):
            return _Analysis(Classification.PISOT, beta_bracket, refined_real, boxes)
    raise PrecisionBudgetExceeded(
        f"could not separate the conjugates of {poly} from the unit circle within budget"
    )


def _classify_palindromic(poly: BasePolynomial) -> Classification:
    d = poly.degree
    if d % 2 != 0:
        # odd palindromic polynomials have -1 as a root, contradicting irreducibility
        return Classification.NEITHER
    if d == 2:
        # conjugate is 1/beta, inside the unit interval
        return Classification.PISOT
    q = _trace_polynomial(poly.coefficients)
    chain = sturm_chain(q)
    qbound = cauchy_bound(q)
    above_two = count_roots(chain, Fraction(2), qbound)
    inside = count_roots(chain, Fraction(-2), Fraction(2))
    n = d // 2
    if above_two == 1 and inside == n - 1:
        return Classification.SALEM
    return Classification.NEITHER


def classify_base(poly: BasePolynomial, config: RunConfig | None = None) -> Classification:
    """Classify the monic irreducible `poly` as Pisot, Salem, or Neither.

    Raises NoRootAboveOne when no real root exceeds 1 (monicity and
    irreducibility are enforced by BasePolynomial itself).
    """
    return _analyze(poly, resolve_config(config)).classification


class AlgebraicBase:
    """A Pisot or Salem number given by its minimal polynomial.

    Immutable after construction except for monotone internal caches (the
    bracketing interval of the root only ever shrinks).
    """

    __slots__ = (
        "min_poly",
        "classification",
        "conjugate_enclosures",
        "_config",
        "_beta_lo",
        "_beta_hi",
        "_power_table",
        "_inv_beta_coords",
        "_floor_beta",
    )

    def __init__(self, min_poly: BasePolynomial, config: RunConfig | None = None):
        config = resolve_config(config)
        analysis = _analyze(min_poly, config)
        if analysis.classification is Classification.NEITHER:
            raise ClassificationError(f"{min_poly} defines neither a Pisot nor a Salem number")
        self.min_poly = min_poly
        self.classification = analysis.classification
        self._config = config
        self._beta_lo, self._beta_hi = analysis.beta_bracket
        self.conjugate_enclosures = tuple(
            [ComplexBox(RealEnclosure(a, b), RealEnclosure.point(0)) for a, b in analysis.real_conjugates]
            + analysis.complex_boxes
        )
        self._power_table: list[tuple[Fraction, ...]] | None = None
        self._inv_beta_coords: tuple[Fraction, ...] | None = None
        self._floor_beta: int | None = None
        self.refine_beta(config.start_bits)

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[int], config: RunConfig | None = None) -> "AlgebraicBase":
        return cls(BasePolynomial(coefficients), config)

    @classmethod
    def from_json(cls, text: str, config: RunConfig | None = None) -> "AlgebraicBase":
        return cls(BasePolynomial.from_json(text), config)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def refine_beta(self, bits: int) -> None:
        """Shrink the cached bracket of the root to width <= 2**-bits."""
        width = Fraction(1, 2**bits)
        if self._beta_hi - self._beta_lo <= width:
            return
        self._beta_lo, self._beta_hi = refine_root(
            self.min_poly.coefficients, self._beta_lo, self._beta_hi, width
        )

    def beta_enclosure(self, width: Fraction | None = None) -> RealEnclosure:
        if width is not None:
            width = as_fraction(width)
            if width <= 0:
                raise ValueError("width must be positive")
            # smallest bits with 2**-bits <= width
            bits = max(1, (-(-width.denominator // width.numerator)).bit_length())
            if bits > self._config.precision_bits:
                raise PrecisionBudgetExceeded(f"beta refinement to width {width} exceeds budget")
            self.refine_beta(bits)
        return RealEnclosure(self._beta_lo, self._beta_hi)

    def beta_lower(self) -> Fraction:
        """An exact rational lower bound for the root, strictly above 1."""
        return self._beta_lo

    def floor_beta(self) -> int:
        if self._floor_beta is None:
            self._floor_beta = self.beta.floor()
        return self._floor_beta

    # -- element constructors -------------------------------------------------

    def element(self, coords: Sequence) -> "FieldElement":
        return FieldElement(self, coords)

    def from_rational(self, value) -> "FieldElement":
        coords = [as_fraction(value)] + [Fraction(0)] * (self.degree - 1)
        return FieldElement(self, coords)

    @property
    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_rational(1)

    @property
    def beta(self) -> "FieldElement":
        if self.degree == 1:
            return self.from_rational(-self.min_poly.coefficients[0])
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return FieldElement(self, coords)

    @property
    def inv_beta(self) -> "FieldElement":
        """1/beta, exact: beta * (beta^{d-1} + c_{d-1} beta^{d-2} + ... + c_1) = -c_0."""
        if self._inv_beta_coords is None:
            c = self.min_poly.coefficients
            d = self.degree
            if d == 1:
                coords = (Fraction(1, -c[0]),)
            else:
                coords = tuple(Fraction(-c[i + 1], c[0]) for i in range(d))
            self._inv_beta_coords = coords
        return FieldElement(self, self._inv_beta_coords)

    # -- reduction table ------------------------------------------------------

    def _powers(self) -> list[tuple[Fraction, ...]]:
        """Coordinates of beta^k for k = 0 .. 2d-2."""
        if self._power_table is None:
            d = self.degree
            c = self.min_poly.coefficients
            table: list[tuple[Fraction, ...]] = []
            for k in range(d):
                row = [Fraction(0)] * d
                row[k] = Fraction(1)
                table.append(tuple(row))
            for _ in range(d, 2 * d - 1):
                prev = table[-1]
                shifted = [Fraction(0)] + list(prev[:-1])
                overflow = prev[-1]
                if overflow:
                    for i in range(d):
                        shifted[i] -= overflow * c[i]
                table.append(tuple(shifted))
            self._power_table = table
        return self._power_table

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlgebraicBase) and self.min_poly == other.min_poly

    def __hash__(self) -> int:
        return hash(self.min_poly)

    def __repr__(self) -> str:
        return f"AlgebraicBase({self.min_poly!s}, {self.classification.value})"


class FieldElement:
    """Element of Q(beta) in power-basis coordinates (1, beta, ..., beta^{d-1})."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base: AlgebraicBase, coeffs: Sequence):
        coords = tuple(as_fraction(c) for c in coeffs)
        if len(coords) != base.degree:
            raise ValueError(f"expected {base.degree} coordinates, got {len(coords)}")
        self.base = base
        self.coeffs = coords

    def _check(self, other: "FieldElement") -> None:
        if self.base != other.base:
            raise BaseMismatch("elements belong to different bases")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.base, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.base, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.base, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        d = self.base.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                prod[i + j] += a * b
        table = self.base._powers()
        out = [Fraction(0)] * d
        for k, c in enumerate(prod):
            if c == 0:
                continue
            row = table[k]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
        return FieldElement(self.base, out)

    __rmul__ = __mul__

    def scale(self, c) -> "FieldElement":
        c = as_fraction(c)
        return FieldElement(self.base, tuple(a * c for a in self.coeffs))

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            raise ValueError("negative powers not supported; multiply by inv_beta instead")
        result = self.base.one
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.base == other.base
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.base, self.coeffs))

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def embed(self, width, config: RunConfig | None = None) -> RealEnclosure:
        return embed_real(self, width, config)

    def floor(self, config: RunConfig | None = None) -> int:
        return certified_floor(self, config)

    def sign(self, config: RunConfig | None = None) -> int:
        """Exact sign of the real embedding (-1, 0, +1)."""
        if self.is_rational:
            v = self.coeffs[0]
            return 0 if v == 0 else (1 if v > 0 else -1)
        config = resolve_config(config)
        for bits in config.bit_schedule():
            self.base.refine_beta(bits)
            s = poly_eval_interval(self.coeffs, self.base.beta_enclosure()).sign()
            if s is not None:
                return s
        raise PrecisionBudgetExceeded("sign of element undecided within budget")

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coeffs]})"


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Named-op wrapper around the element operators (add, sub, mul)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def embed_real(x: FieldElement, target_width, config: RunConfig | None = None) -> RealEnclosure:
    """Enclosure of the real embedding of x (the embedding sending beta above 1)."""
    width = as_fraction(target_width)
    if width <= 0:
        raise ValueError("target width must be positive")
    if x.is_rational:
        return RealEnclosure.point(x.coeffs[0])
    config = resolve_config(config)
    for bits in config.bit_schedule():
        x.base.refine_beta(bits)
        enc = poly_eval_interval(x.coeffs, x.base.beta_enclosure())
        if enc.width <= width:
            return enc
    raise PrecisionBudgetExceeded(f"embedding not certified to width {width} within budget")


def certified_floor(x: FieldElement, config: RunConfig | None = None) -> int:
    """Floor of the real embedding of x.

    Rationality is decided exactly first (the power-basis representation is
    canonical, so x is rational iff all non-constant coordinates vanish); for
    irrational x the enclosure is refined until it excludes every integer,
    which always happens at a finite precision.
    """
    import math

    if x.is_rational:
        return math.floor(x.coeffs[0])
    config = resolve_config(config)
    for bits in config.bit_schedule():
        x.base.refine_beta(bits)
        enc = poly_eval_interval(x.coeffs, x.base.beta_enclosure())
        if enc.excludes_integers():
            return math.floor(enc.lower)
    raise PrecisionBudgetExceeded("floor undecided within precision budget")
