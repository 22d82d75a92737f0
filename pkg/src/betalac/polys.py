"""Exact univariate polynomial utilities.

Coefficient lists are ascending (coeffs[i] multiplies x**i) with Fraction or
int entries.  Everything here evaluates signs of integer/rational polynomials
at rational points exactly, which is what makes the bisection-based root
machinery certified rather than heuristic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .intervals import RealEnclosure

Coeffs = Sequence[Fraction | int]


def poly_eval(coeffs: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_eval_interval(coeffs: Coeffs, x: RealEnclosure) -> RealEnclosure:
    """Horner evaluation with interval arithmetic; contains p(t) for t in x."""
    acc = RealEnclosure.point(0)
    for c in reversed(coeffs):
        acc = acc * x + RealEnclosure.point(Fraction(c))
    return acc


def poly_derivative(coeffs: Coeffs) -> list[Fraction]:
    return [Fraction(i * c) for i, c in enumerate(coeffs)][1:] or [Fraction(0)]


def poly_degree(coeffs: Coeffs) -> int:
    d = len(coeffs) - 1
    while d > 0 and coeffs[d] == 0:
        d -= 1
    return d


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Remainder of a by b over the rationals."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _trim(a):
        da, la = len(a) - 1, a[-1]
        q = la / lb
        for i in range(db + 1):
            a[da - db + i] -= q * b[i]
        a.pop()
        _trim(a)
    return a


def sturm_chain(coeffs: Coeffs) -> list[list[Fraction]]:
    """Sturm sequence of a squarefree polynomial."""
    f0 = _trim([Fraction(c) for c in coeffs])
    f1 = _trim(poly_derivative(f0))
    chain = [f0, f1]
    while chain[-1]:
        r = poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [p for p in chain if p]


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[list[Fraction]], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    if a >= b:
        return 0
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def cauchy_bound(coeffs: Coeffs) -> Fraction:
    """Strict upper bound on the modulus of every root (monic input)."""
    d = poly_degree(coeffs)
    lead = Fraction(coeffs[d])
    height = max((abs(Fraction(c)) / abs(lead) for c in coeffs[:d]), default=Fraction(0))
    return 1 + height


def isolate_real_roots(coeffs: Coeffs) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals (a, b), each containing exactly one real root.

    Input must be squarefree.  Endpoints are never roots (they are dyadic
    subdivisions of a strict root bound, and roots of the irreducible inputs
    used in this library are irrational for degree >= 2; rational roots of
    degree-1 factors are returned as degenerate [r, r] intervals).
    """
    chain = sturm_chain(coeffs)
    bound = cauchy_bound(coeffs)
    total = count_roots(chain, -bound, bound)
    out: list[tuple[Fraction, Fraction]] = []

    def split(lo: Fraction, hi: Fraction, n: int) -> None:
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        # pick a split point that is not itself a root (finitely many roots,
        # so some dyadic offset works)
        mid = (lo + hi) / 2
        offset = (hi - lo) / 4
        while poly_eval(coeffs, mid) == 0:
            mid = lo + offset
            offset /= 2
        left_n = count_roots(chain, lo, mid)
        split(lo, mid, left_n)
        split(mid, hi, n - left_n)

    split(-bound, bound, total)
    return sorted(out)


def refine_root(coeffs: Coeffs, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect a sign-changing bracket down to the requested width."""
    if lo == hi:
        return lo, hi
    flo = poly_eval(coeffs, lo)
    fhi = poly_eval(coeffs, hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("bracket endpoints must have opposite signs")
    neg_low = flo < 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = poly_eval(coeffs, mid)
        if fm == 0:
            return mid, mid
        if (fm < 0) == neg_low:
            lo = mid
        else:
            hi = mid
    return lo, hi
