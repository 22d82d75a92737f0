import random
from fractions import Fraction

import pytest

from betalac import (
    LogPower,
    PowerFloor,
    RelationEvaluator,
    RelationPolynomial,
    SeriesSpec,
    SumsetSpec,
    SupportSet,
    evaluate,
    rho_coefficients,
    weighted_sum,
    y_n_count,
    y_r_recurrence_check,
    y_r_value,
)
from betalac.errors import HorizonExceeded, HorizonInsufficient

MICRO12 = Fraction(1, 10**12)


def exact_squares_value(nterms: int) -> Fraction:
    return sum(Fraction(1, 2 ** (m * m)) for m in range(nterms))


# -- evaluate ------------------------------------------------------------------


def test_constant_series_is_exact(base2):
    spec = SeriesSpec(SupportSet.from_elements([0], 200), 1)
    out = evaluate(spec, base2, MICRO12)
    assert out.enclosure.lower == 1
    assert out.enclosure.upper - 1 == out.tail_bound


def test_squares_series_value_against_partial_sum_oracle(base2):
    spec = SeriesSpec.from_sequence(PowerFloor(2), 300)
    out = evaluate(spec, base2, Fraction(1, 10**9))
    oracle = exact_squares_value(25)
    assert out.enclosure.contains(oracle)
    assert out.enclosure.width <= Fraction(1, 10**9)
    # leading digits from the oracle: 1.564468...
    assert oracle - Fraction(1, 10**9) < out.enclosure.lower < oracle + Fraction(1, 10**9)


def test_full_geometric_support_sums_to_two(base2):
    spec = SeriesSpec(SupportSet.from_elements(range(200), 200), 1)
    out = evaluate(spec, base2, Fraction(1, 10**9))
    assert out.enclosure.contains(2 - Fraction(1, 2**199))
    assert out.enclosure.contains(2)  # the tail interval covers the rest


def test_series_value_on_golden_base(golden):
    spec = SeriesSpec.from_sequence(PowerFloor(2), 400)
    out = evaluate(spec, golden, Fraction(1, 10**10))
    # oracle: exact 10-term partial sum in Q(beta), embedded independently;
    # the true value lies within the oracle's own tail (< phi^-100 * 3)
    inv = golden.inv_beta
    oracle = golden.zero
    for m in range(10):
        oracle = oracle + inv ** (m * m)
    enc = oracle.embed(Fraction(1, 10**14)).widen(Fraction(1, 10**19))
    assert out.enclosure.width <= Fraction(1, 10**10)
    assert out.enclosure.lower <= enc.upper and enc.lower <= out.enclosure.upper


def test_horizon_insufficient_reports_needed(base2):
    spec = SeriesSpec.from_sequence(PowerFloor(2), 12)
    with pytest.raises(HorizonInsufficient) as exc:
        evaluate(spec, base2, Fraction(1, 2**40))
    assert exc.value.needed is not None and exc.value.needed > 12


def test_evaluate_monotone_in_horizon(base2):
    # with an exact-rational base the embedding is a point, so nesting of
    # enclosures across horizons is exact
    encs = []
    for horizon in (30, 60, 120):
        spec = SeriesSpec.from_sequence(PowerFloor(2), horizon)
        encs.append(evaluate(spec, base2, Fraction(1, 2**20)).enclosure)
    for coarse, fine in zip(encs, encs[1:]):
        assert coarse.lower <= fine.lower and fine.upper <= coarse.upper


# -- rho -----------------------------------------------------------------------


def test_rho_single_factor_is_coefficient_array():
    spec = SeriesSpec(SupportSet.from_elements([0, 1, 4, 9], 11), 1)
    assert rho_coefficients([spec], (1,), 11) == [1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0]


def test_rho_worked_square_pair_example():
    spec = SeriesSpec(SupportSet.from_elements([0, 1, 4, 9], 11), 1)
    assert rho_coefficients([spec], (2,), 11) == [1, 2, 1, 0, 2, 2, 0, 0, 1, 2, 2]


def test_rho_all_zero_exponents():
    spec = SeriesSpec(SupportSet.from_elements([0, 1, 4, 9], 11), 1)
    assert rho_coefficients([spec, spec], (0, 0), 6) == [1, 0, 0, 0, 0, 0]


def test_rho_requires_complete_support():
    spec = SeriesSpec(SupportSet.from_elements([0, 1], 5), 1)
    with pytest.raises(HorizonExceeded):
        rho_coefficients([spec], (1,), 6)


def test_rho_support_equals_sumset():
    rng = random.Random(31)
    for _ in range(25):
        horizon = rng.randint(15, 120)
        supports = []
        for _ in range(rng.randint(1, 3)):
            elems = sorted({0} | set(rng.sample(range(1, horizon), rng.randint(1, 6))))
            mults = [rng.randint(1, 3) for _ in elems]
            supports.append(SupportSet.from_elements(elems, horizon, mults))
        specs = [SeriesSpec(s, 3) for s in supports]
        k = tuple(rng.randint(0, 2) for _ in specs)
        rho = rho_coefficients(specs, k, horizon)
        sumset = weighted_sum(SumsetSpec(tuple((s, ki) for s, ki in zip(supports, k)), horizon))
        positives = [m for m, v in enumerate(rho) if v > 0]
        assert positives == sumset.elements.tolist()


def test_rho_brute_force_weighted_counts():
    # coefficients t with multiplicity 2 must weight representation counts
    support = SupportSet.from_elements([0, 2, 3], 12, [1, 2, 1])
    spec = SeriesSpec(support, 2)
    rho = rho_coefficients([spec], (2,), 12)
    t = {0: 1, 2: 2, 3: 1}
    brute = [0] * 12
    for a, ta in t.items():
        for b, tb in t.items():
            if a + b < 12:
                brute[a + b] += ta * tb
    assert rho == brute


# -- Y_R -----------------------------------------------------------------------


def squares_evaluator(base, horizon=400, coeffs=None):
    spec = SeriesSpec.from_sequence(PowerFloor(2), horizon)
    poly = RelationPolynomial(base, {(1,): coeffs or [1]})
    return RelationEvaluator([spec], poly)


def test_y0_and_y1_against_rational_oracle(base2):
    ev = squares_evaluator(base2)
    y0 = ev.value(0, MICRO12)
    y1 = ev.value(1, MICRO12)
    oracle0 = sum(Fraction(1, 2 ** (j * j)) for j in range(1, 8))
    oracle1 = sum(Fraction(1, 2 ** (j * j - 1)) for j in range(2, 8))
    assert y0.contains(oracle0)
    assert y1.contains(oracle1)
    # first decimals for the record: 0.564468..., 0.128936...
    assert abs(y0.midpoint - Fraction("0.564468413605938")) < MICRO12
    assert abs(y1.midpoint - Fraction("0.128936827211877")) < MICRO12


def test_worked_recurrence_instance_to_1e12(base2):
    residual = y_r_recurrence_check(
        [SeriesSpec.from_sequence(PowerFloor(2), 400)],
        RelationPolynomial(base2, {(1,): [1]}),
        1,
        MICRO12,
    )
    assert residual.contains(0)
    assert residual.width <= MICRO12


def test_constant_term_gives_zero_tail(base2):
    spec = SeriesSpec.from_sequence(PowerFloor(2), 300)
    poly = RelationPolynomial(base2, {(0,): [1]})
    enc = y_r_value([spec], poly, 3, Fraction(1, 10**9))
    assert enc.contains(0) and enc.width <= Fraction(1, 10**9)
    count, undecided = y_n_count([spec], poly, 4)
    assert count == 0 and undecided == []


def test_threshold_counts(base2):
    spec = SeriesSpec.from_sequence(PowerFloor(2), 400)
    poly = RelationPolynomial(base2, {(1,): [1]})
    assert y_n_count([spec], poly, 1) == (1, [])  # Y_0 ~ 0.564 >= 1/2
    assert y_n_count([spec], poly, 2) == (1, [])  # Y_1 ~ 0.129 < 1/2


def test_randomized_recurrence_residuals(golden, base2):
    rng = random.Random(41)
    width = Fraction(1, 10**6)
    for base in (base2, golden):
        specs = [
            SeriesSpec.from_sequence(PowerFloor(2), 500),
            SeriesSpec.from_sequence(LogPower(1), 500),
        ]
        for _ in range(25):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                k = (rng.randint(0, 2), rng.randint(0, 2))
                coeffs = [rng.randint(-3, 3) for _ in range(base.degree)]
                if all(c == 0 for c in coeffs):
                    coeffs[0] = 1
                terms[k] = coeffs
            poly = RelationPolynomial(base, terms)
            ev = RelationEvaluator(specs, poly)
            r = rng.randint(1, 40)
            assert ev.recurrence_residual(r, width).contains(0)


def test_relation_polynomial_validation(base2):
    with pytest.raises(ValueError):
        RelationPolynomial(base2, {})
    with pytest.raises(ValueError):
        RelationPolynomial(base2, {(1,): [0]})
    with pytest.raises(ValueError):
        RelationPolynomial(base2, {(1,): [Fraction(1, 2)]})
    with pytest.raises(ValueError):
        RelationPolynomial(base2, {(1,): [1], (1, 0): [1]})
    poly = RelationPolynomial(base2, {(2, 1): [1], (0, 3): [2]})
    assert poly.degree == 3
    with pytest.raises(ValueError):
        RelationEvaluator([SeriesSpec(SupportSet.from_elements([0], 10), 1)], poly)


def test_value_requires_enough_support(base2):
    spec = SeriesSpec.from_sequence(PowerFloor(2), 30)
    poly = RelationPolynomial(base2, {(1,): [1]})
    with pytest.raises(HorizonInsufficient) as exc:
        y_r_value([spec], poly, 25, Fraction(1, 10**9))
    assert exc.value.needed > 30
