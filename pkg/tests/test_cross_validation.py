"""Seeded fuzzing against independent high-precision oracles.

The library side is exact/certified; the oracle side is 60-digit numerics
plus the exact self-reciprocal argument for unit-circle roots.  Random
small-coefficient polynomials keep root moduli far from the tolerance band,
so a disagreement would be a real bug, not oracle noise.
"""

import random
from fractions import Fraction

import mpmath
import sympy

from betalac import (
    AlgebraicBase,
    BasePolynomial,
    Classification,
    beta_expand,
    certified_floor,
    classify_base,
)
from betalac.errors import NoRootAboveOne, NotMonic, Reducible


def oracle_classification(coeffs):
    mpmath.mp.dps = 60
    roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(coeffs)], maxsteps=400, extraprec=200)
    tol = mpmath.mpf(10) ** -40
    above = [r for r in roots if abs(mpmath.im(r)) < tol and mpmath.re(r) > 1]
    if len(above) != 1:
        return Classification.NEITHER
    others = [r for r in roots if r not in above]
    if all(abs(r) < 1 - tol for r in others):
        return Classification.PISOT
    palindromic = list(coeffs) == list(coeffs)[::-1]
    if (
        palindromic
        and all(abs(r) < 1 + tol for r in others)
        and any(abs(abs(r) - 1) < tol for r in others)
    ):
        return Classification.SALEM
    return Classification.NEITHER


def test_classifier_agrees_with_oracle_on_random_polynomials():
    rng = random.Random(2024)
    x = sympy.Symbol("x")
    checked = 0
    while checked < 120:
        degree = rng.randint(2, 6)
        coeffs = [rng.randint(-6, 6) for _ in range(degree)] + [1]
        if coeffs[0] == 0:
            continue
        if not sympy.Poly(list(reversed(coeffs)), x, domain="ZZ").is_irreducible:
            continue
        try:
            got = classify_base(BasePolynomial(coeffs))
        except NoRootAboveOne:
            mpmath.mp.dps = 60
            roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(coeffs)], maxsteps=400, extraprec=200)
            assert not any(
                abs(mpmath.im(r)) < mpmath.mpf(10) ** -40 and mpmath.re(r) > 1 for r in roots
            )
            checked += 1
            continue
        assert got is oracle_classification(coeffs), coeffs
        checked += 1


def test_floors_agree_with_high_precision_embedding():
    rng = random.Random(2025)
    bases = [
        AlgebraicBase.from_coefficients([-1, -1, 1]),
        AlgebraicBase.from_coefficients([-1, -1, 0, 1]),  # plastic number
        AlgebraicBase.from_coefficients([1, -1, -1, -1, 1]),  # Salem quartic
    ]
    mpmath.mp.dps = 60
    for base in bases:
        coeffs = base.min_poly.coefficients
        roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(coeffs)], maxsteps=400, extraprec=200)
        beta = max(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** -40)
        for _ in range(40):
            coords = [Fraction(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(base.degree)]
            elem = base.element(coords)
            value = mpmath.mpf(0)
            for i, c in enumerate(coords):
                value += mpmath.mpf(c.numerator) / c.denominator * beta**i
            # stay away from the oracle's own precision boundary
            if abs(value - mpmath.floor(value)) < mpmath.mpf(10) ** -40:
                continue
            assert certified_floor(elem) == int(mpmath.floor(value)), coords


def test_digit_streams_agree_with_float_orbit(golden):
    mpmath.mp.dps = 60
    phi = (1 + mpmath.sqrt(5)) / 2
    rng = random.Random(2026)
    for _ in range(10):
        num, den = rng.randint(0, 499), 500
        eta = golden.from_rational(Fraction(num, den))
        stream = beta_expand(eta, golden, 40)
        x = mpmath.mpf(num) / den
        for n, digit in enumerate(stream.digits, start=1):
            scaled = phi * x
            assert digit == int(mpmath.floor(scaled)), (num, n)
            x = scaled - digit


def test_construction_rejections_are_consistent():
    rng = random.Random(2027)
    x = sympy.Symbol("x")
    rejected = accepted = 0
    for _ in range(200):
        degree = rng.randint(1, 5)
        coeffs = [rng.randint(-4, 4) for _ in range(degree)] + [rng.choice([1, 1, 2])]
        try:
            BasePolynomial(coeffs)
            accepted += 1
        except NotMonic:
            assert coeffs[-1] != 1 or all(c == 0 for c in coeffs[1:])
            rejected += 1
        except Reducible:
            poly = sympy.Poly(list(reversed(coeffs)), x, domain="ZZ")
            assert not poly.is_irreducible
            rejected += 1
    assert accepted and rejected
