from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from betalac.intervals import ComplexBox, RealEnclosure, as_fraction

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=64
)


def make_interval(a: Fraction, b: Fraction) -> RealEnclosure:
    return RealEnclosure(min(a, b), max(a, b))


def test_basic_invariants():
    e = RealEnclosure(Fraction(1, 3), Fraction(1, 2))
    assert e.width == Fraction(1, 6)
    assert e.contains(Fraction(2, 5))
    assert not e.contains(1)
    with pytest.raises(ValueError):
        RealEnclosure(Fraction(1), Fraction(0))


def test_as_fraction_parsing():
    assert as_fraction("1e-9") == Fraction(1, 10**9)
    assert as_fraction("0.25") == Fraction(1, 4)
    assert as_fraction("1/3") == Fraction(1, 3)
    with pytest.raises(TypeError):
        as_fraction(0.25)


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_interval_arithmetic_soundness(a1, a2, x, b1, b2, y):
    ia = make_interval(a1, a2)
    ib = make_interval(b1, b2)
    # clamp the sample points into the intervals
    xa = min(max(x, ia.lower), ia.upper)
    yb = min(max(y, ib.lower), ib.upper)
    assert (ia + ib).contains(xa + yb)
    assert (ia - ib).contains(xa - yb)
    assert (ia * ib).contains(xa * yb)
    assert (-ia).contains(-xa)


def test_sign_and_integer_exclusion():
    assert RealEnclosure(Fraction(1, 3), Fraction(1, 2)).sign() == 1
    assert RealEnclosure(Fraction(-2), Fraction(-1, 9)).sign() == -1
    assert RealEnclosure(Fraction(-1), Fraction(1)).sign() is None
    assert RealEnclosure(Fraction(5, 2), Fraction(29, 10)).excludes_integers()
    assert not RealEnclosure(Fraction(2), Fraction(5, 2)).excludes_integers()


def test_decimal_emission_is_outward():
    e = RealEnclosure(Fraction(1, 3), Fraction(2, 3))
    d = e.to_decimal(4)
    assert d == {"lower": "0.3333", "upper": "0.6667"}
    neg = RealEnclosure(Fraction(-2, 3), Fraction(-1, 3))
    dn = neg.to_decimal(4)
    assert dn == {"lower": "-0.6667", "upper": "-0.3333"}


def test_complex_box_modulus_bounds():
    box = ComplexBox(
        RealEnclosure(Fraction(3, 5), Fraction(4, 5)),
        RealEnclosure(Fraction(0), Fraction(1, 5)),
    )
    lo, hi = box.modulus_squared_bounds()
    assert lo == Fraction(9, 25)
    assert hi == Fraction(16, 25) + Fraction(1, 25)
    assert box.certifies_modulus_below(1)
    assert not box.certifies_modulus_above(1)
    straddling = ComplexBox(
        RealEnclosure(Fraction(-1), Fraction(1)), RealEnclosure(Fraction(0), Fraction(0))
    )
    assert not straddling.certifies_modulus_below(1)
    assert not straddling.certifies_modulus_above(1)
