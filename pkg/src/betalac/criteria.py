"""Hypothesis checkers: threshold-root enclosures, admissibility of the
exponent/degree pair, growth-exponent fits, and per-assumption empirical
verdicts for the independence criteria.

Honesty contract: asymptotic hypotheses (anything of the shape "tends to 0",
"tends to infinity", or little-o) can only be probed on a finite grid, so
verdicts are "supported"/"violated"/"indeterminate", never proofs.  The trend
rules are deliberately simple and stated here once:

* a positive sequence sampled on a geometric grid "tends to 0" when the
  least-squares trend line of log(value) against log(R) falls by at least the
  configured factor across the grid (fitting de-noises the jumpy gap
  statistics; single endpoint samples would make the verdict a lottery);
* it "tends to infinity" when the sequence is monotone nondecreasing over the
  tail of the grid and the fitted trend grows by at least the configured
  factor (log-log-scale phenomena such as iterated-logarithm growth are real
  but slow, hence the deliberately small default growth factor);
* "bounded" means the tail of the sequence is nonincreasing up to rounding.

Everything that can be decided exactly (coefficient scans, sign tests of the
threshold polynomials, the strict counting inequality) is decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .config import RunConfig, resolve_config
from .errors import DegenerateSamples, DomainError, GridTooSmall, TieUndecidable
from .intervals import RealEnclosure, as_fraction
from .sequences import ExponentSequence, SupportSet, support_up_to
from .sumsets import SumsetSpec, weighted_sum


# -- threshold polynomials ----------------------------------------------------


def g_eval(k: int, x: Fraction) -> Fraction:
    """(1-x)**k + (k-1)*x - 1, exactly."""
    x = as_fraction(x)
    return (1 - x) ** k + (k - 1) * x - 1


class GkPolynomial:
    """Callable wrapper for the degree-k threshold polynomial."""

    def __init__(self, k: int):
        if k < 1:
            raise DomainError("k must be >= 1")
        self.k = k

    def __call__(self, x) -> Fraction:
        return g_eval(self.k, x)

    def __repr__(self) -> str:
        return f"GkPolynomial(k={self.k})"


def sigma_k(k: int, width) -> RealEnclosure:
    """Enclosure of the unique zero of the threshold polynomial in (0, 1).

    Exists for k >= 3; located by dyadic bisection with exact rational sign
    evaluations, using the sign rule (negative left of the zero, positive
    right of it).
    """
    width = as_fraction(width)
    if k < 3:
        raise DomainError("the threshold polynomial has no zero in (0,1) for k < 3")
    if width <= 0:
        raise ValueError("width must be positive")
    hi = Fraction(1)
    lo = Fraction(1, 2)
    while True:
        s = g_eval(k, lo)
        if s < 0:
            break
        if s == 0:
            return RealEnclosure(lo, lo)
        hi = lo
        lo /= 2
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = g_eval(k, mid)
        if s == 0:
            return RealEnclosure(mid, mid)
        if s < 0:
            lo = mid
        else:
            hi = mid
    return RealEnclosure(lo, hi)


def check_admissible(a: int, rho) -> bool:
    """Truth of the admissibility condition: rho > a for a <= 3, and
    rho > 1/sigma_a for a >= 4 (decided by the exact sign of the threshold
    polynomial at 1/rho, which is equivalent to refining an enclosure of
    sigma_a until decisive, but never indecisive)."""
    if a < 1:
        raise DomainError("a must be a positive integer")
    rho = as_fraction(rho)
    if a <= 3:
        if rho == a:
            raise TieUndecidable(f"rho equals the boundary {a} exactly")
        return rho > a
    if rho <= 1:
        return False
    s = g_eval(a, 1 / rho)
    if s == 0:
        raise TieUndecidable("rho equals the reciprocal threshold root exactly")
    return s < 0


def check_mai4_sign(eps, a: int) -> int:
    """Exact sign of the threshold polynomial at (1/2 + eps)^(-1) * a^(-2)."""
    eps = as_fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    if a < 3:
        raise DomainError("a must be >= 3")
    x = 1 / ((Fraction(1, 2) + eps) * a * a)
    s = g_eval(a, x)
    return 0 if s == 0 else (1 if s > 0 else -1)


# -- growth-exponent fitting --------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float


def fit_growth_exponent(samples: Sequence[tuple]) -> FitResult:
    """Deterministic least squares of log(value) on log(R).

    residual is the root-mean-square misfit in log space; an exact power law
    comes back with residual 0.
    """
    if len(samples) < 3:
        raise DegenerateSamples("need at least 3 samples")
    xs, ys = [], []
    for r, v in samples:
        rf, vf = float(r), float(v)
        if rf <= 0 or vf <= 0:
            raise DegenerateSamples(f"nonpositive sample ({r}, {v})")
        xs.append(math.log(rf))
        ys.append(math.log(vf))
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise DegenerateSamples("all sample points share one abscissa")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    rss = math.fsum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    return FitResult(slope, intercept, math.sqrt(rss / n))


# -- report plumbing ----------------------------------------------------------


SUPPORTED = "supported"
VIOLATED = "violated"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class AssumptionReport:
    name: str
    verdict: str
    statistics: dict
    sample_grid: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "statistics": self.statistics,
            "sample_grid": list(self.sample_grid),
        }


@dataclass(frozen=True)
class CriteriaReport:
    criterion: str
    assumptions: tuple[AssumptionReport, ...]

    @property
    def verdict(self) -> str:
        verdicts = {a.verdict for a in self.assumptions}
        if VIOLATED in verdicts:
            return VIOLATED
        if INDETERMINATE in verdicts:
            return INDETERMINATE
        return SUPPORTED

    def assumption(self, name: str) -> AssumptionReport:
        for a in self.assumptions:
            if a.name == name:
                return a
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "verdict": self.verdict,
            "assumptions": [a.to_dict() for a in self.assumptions],
        }


@dataclass(frozen=True)
class CriteriaPolicy:
    """Tunable trend thresholds (see the module docstring for the rules)."""

    monotone_fraction: float = 0.5
    decrease_factor: float = 10.0
    growth_factor: float = 1.04
    domination_margin: float = 0.05
    ratio_slack: float = 1.25
    rel_tol: float = 1e-9


def _fitted_change(grid: Sequence[float], values: Sequence[float]) -> float:
    """Multiplicative change of the fitted log-log trend line across the grid."""
    fit = fit_growth_exponent(list(zip(grid, values)))
    return math.exp(fit.slope * (math.log(grid[-1]) - math.log(grid[0])))


def _tail(values: Sequence[float], fraction: float) -> Sequence[float]:
    start = int(len(values) * (1 - fraction))
    return values[max(0, min(start, len(values) - 2)) :]


def trends_to_zero(grid, values, policy: CriteriaPolicy) -> tuple[bool, dict]:
    change = _fitted_change(grid, values)
    ok = change <= 1.0 / policy.decrease_factor
    return ok, {
        "first": values[0],
        "last": values[-1],
        "fitted_change": change,
        "required_change": 1.0 / policy.decrease_factor,
    }


def trends_to_infinity(grid, values, policy: CriteriaPolicy) -> tuple[bool, dict]:
    tail = _tail(values, policy.monotone_fraction)
    monotone = all(b >= a * (1 - policy.rel_tol) for a, b in zip(tail, tail[1:]))
    change = _fitted_change(grid, values)
    ok = monotone and change >= policy.growth_factor
    return ok, {
        "first": values[0],
        "last": values[-1],
        "fitted_change": change,
        "required_change": policy.growth_factor,
        "tail_monotone": monotone,
    }


def _bounded_tail(values, policy: CriteriaPolicy) -> tuple[bool, dict]:
    tail = _tail(values, policy.monotone_fraction)
    ok = all(b <= a * (1 + policy.rel_tol) for a, b in zip(tail, tail[1:]))
    return ok, {"max": max(values), "tail_nonincreasing": ok}


def _require_grid(grid, minimum: int = 4) -> list[int]:
    grid = sorted(int(g) for g in grid)
    if len(grid) < minimum:
        raise GridTooSmall(f"need at least {minimum} grid points, got {len(grid)}")
    return grid


# -- criterion: products of powers, linear independence -----------------------


def _enumerate_k_vectors(r: int, a: int, cap: int) -> list[tuple[int, ...]]:
    k1_cap = a - 1 if r == 2 else a
    ranges = [range(min(k1_cap, cap) + 1)] + [range(cap + 1)] * (r - 1)
    out = []

    def rec(prefix: tuple[int, ...]) -> None:
        i = len(prefix)
        if i == r:
            out.append(prefix)
            return
        for v in ranges[i]:
            rec(prefix + (v,))

    rec(())
    return out


def check_cri1(
    seqs: Sequence[ExponentSequence],
    a: int,
    grid: Sequence[int] | None = None,
    *,
    delta: Fraction | None = None,
    k_cap: int | None = None,
    coefficient_bound: int | None = None,
    policy: CriteriaPolicy | None = None,
    config: RunConfig | None = None,
) -> CriteriaReport:
    """Empirical verdicts for the four hypotheses of the power-product
    linear-independence criterion, on the given series family.

    Assumption names in the report:

    1. ``coefficients_bounded`` - exact scan of every truncated coefficient.
    2. ``gap_product_vanishes`` - for every admissible exponent vector k
       (first entry capped at a-1 when there are two series, at a otherwise;
       remaining entries capped at ``k_cap``, default a), the scaled gap
       gap(R) * prod_h lambda_h(R)^{k_h} / R must trend to zero, where the
       gap is taken in the Minkowski sum that folds the next-to-last support
       one extra time and omits the last series.
    3. ``counting_exponents`` - the first series' counting function must grow
       strictly slower than R^(1/a - delta) (fitted exponent), and each later
       series must be log-log dominated by its predecessor (pointwise
       exponent log lambda_i / log lambda_{i-1} nonincreasing on the tail and
       ending below 1 - margin).
    4. ``last_support_syndetic_ratio`` - consecutive-element ratios of the
       last support must not worsen: the late-half maximum stays within the
       configured slack of the early-half maximum.
    """
    config = resolve_config(config)
    policy = policy or CriteriaPolicy()
    r = len(seqs)
    if r < 2:
        raise DomainError("need at least two series")
    if a < 1:
        raise DomainError("a must be a positive integer")
    grid = _require_grid(grid if grid is not None else config.default_grid())
    delta = as_fraction(delta) if delta is not None else Fraction(1, 10 * a)
    if not 0 < delta < Fraction(1, a):
        raise DomainError("delta must lie in (0, 1/a)")
    cap = k_cap if k_cap is not None else a
    horizon = grid[-1] + 1
    supports = [support_up_to(seq, horizon, config) for seq in seqs]
    lambdas = [[s.count_below(g) for g in grid] for s in supports]

    assumptions = [
        _cri1_coefficients(supports, coefficient_bound),
        _cri1_gap_product(supports, lambdas, a, r, cap, grid, horizon, policy),
        _cri1_counting(lambdas, a, delta, grid, policy),
        _cri1_syndetic(supports[-1], horizon, policy),
    ]
    return CriteriaReport("cri1", tuple(assumptions))


def _cri1_coefficients(supports: list[SupportSet], bound: int | None) -> AssumptionReport:
    observed = max(s.max_multiplicity for s in supports)
    cap = bound if bound is not None else observed
    verdict = SUPPORTED if observed <= cap else VIOLATED
    return AssumptionReport(
        "coefficients_bounded",
        verdict,
        {"observed_max": observed, "bound": cap, "per_series": [s.max_multiplicity for s in supports]},
    )


def _cri1_gap_product(
    supports: list[SupportSet],
    lambdas: list[list[int]],
    a: int,
    r: int,
    cap: int,
    grid: list[int],
    horizon: int,
    policy: CriteriaPolicy,
) -> AssumptionReport:
    folded_cache: dict[tuple[int, ...], SupportSet] = {}
    per_k: dict[str, dict] = {}
    verdict = SUPPORTED
    for kvec in _enumerate_k_vectors(r, a, cap):
        prefix = kvec[: r - 1]
        if prefix not in folded_cache:
            operands = [(supports[h], prefix[h]) for h in range(r - 2)]
            operands.append((supports[r - 2], 1 + prefix[r - 2]))
            folded_cache[prefix] = weighted_sum(SumsetSpec(tuple(operands), horizon))
        folded = folded_cache[prefix]
        usable_grid, ratios = [], []
        for j, g in enumerate(grid):
            if g <= folded.min_element:
                continue
            if any(lambdas[h][j] == 0 and kvec[h] > 0 for h in range(r)):
                continue
            gap = g - folded.largest_below(g)
            product = 1
            for h in range(r):
                product *= lambdas[h][j] ** kvec[h]
            ratios.append(gap * product / g)
            usable_grid.append(g)
        key = ",".join(map(str, kvec))
        if len(ratios) < 4:
            per_k[key] = {"verdict": INDETERMINATE, "usable_points": len(ratios)}
            if verdict == SUPPORTED:
                verdict = INDETERMINATE
            continue
        ok, stats = trends_to_zero(usable_grid, ratios, policy)
        per_k[key] = {"verdict": SUPPORTED if ok else VIOLATED, **stats}
        if not ok:
            verdict = VIOLATED
    return AssumptionReport("gap_product_vanishes", verdict, {"per_k": per_k}, tuple(grid))


def _cri1_counting(
    lambdas: list[list[int]],
    a: int,
    delta: Fraction,
    grid: list[int],
    policy: CriteriaPolicy,
) -> AssumptionReport:
    samples = [(g, lam) for g, lam in zip(grid, lambdas[0]) if lam > 0]
    stats: dict = {}
    verdict = SUPPORTED
    if len(samples) < 4:
        return AssumptionReport("counting_exponents", INDETERMINATE, {"usable_points": len(samples)}, tuple(grid))
    fit = fit_growth_exponent(samples)
    target = float(Fraction(1, a) - delta)
    stats["first_series"] = {"fitted_exponent": fit.slope, "required_below": target}
    if fit.slope >= target:
        verdict = VIOLATED
    dominations = []
    for i in range(1, len(lambdas)):
        pairs = [
            (g, math.log(lambdas[i][j]) / math.log(lambdas[i - 1][j]))
            for j, g in enumerate(grid)
            if lambdas[i - 1][j] >= 2 and lambdas[i][j] >= 1
        ]
        entry: dict = {"pair": f"{i + 1} vs {i}"}
        if len(pairs) < 4:
            entry["verdict"] = INDETERMINATE
            if verdict == SUPPORTED:
                verdict = INDETERMINATE
        else:
            # the pointwise exponent is a step-function ratio, so judge the
            # fitted line rather than raw samples: it must not drift upward
            # and must end clearly below 1
            gs = [math.log(g) for g, _ in pairs]
            es = [e for _, e in pairs]
            n = len(gs)
            mx, my = math.fsum(gs) / n, math.fsum(es) / n
            sxx = math.fsum((x - mx) ** 2 for x in gs)
            slope = math.fsum((x - mx) * (y - my) for x, y in zip(gs, es)) / sxx
            fit_first = my + slope * (gs[0] - mx)
            fit_last = my + slope * (gs[-1] - mx)
            drift = fit_last - fit_first
            small = fit_last < 1 - policy.domination_margin
            entry.update(
                {
                    "verdict": SUPPORTED if (drift <= 0.01 and small) else VIOLATED,
                    "fitted_first": fit_first,
                    "fitted_last": fit_last,
                    "drift": drift,
                }
            )
            if entry["verdict"] == VIOLATED:
                verdict = VIOLATED
        dominations.append(entry)
    stats["dominations"] = dominations
    return AssumptionReport("counting_exponents", verdict, stats, tuple(grid))


def _cri1_syndetic(support: SupportSet, horizon: int, policy: CriteriaPolicy) -> AssumptionReport:
    elements = [int(e) for e in support.elements if e >= 2]
    ratios = [b / a for a, b in zip(elements, elements[1:])]
    if len(ratios) < 4:
        return AssumptionReport(
            "last_support_syndetic_ratio", INDETERMINATE, {"usable_ratios": len(ratios)}
        )
    half = len(ratios) // 2
    early_max = max(ratios[:half])
    late_max = max(ratios[half:])
    ok = late_max <= early_max * policy.ratio_slack
    return AssumptionReport(
        "last_support_syndetic_ratio",
        SUPPORTED if ok else VIOLATED,
        {
            "early_max_ratio": early_max,
            "late_max_ratio": late_max,
            "slack": policy.ratio_slack,
            "fitted_interval_constant": late_max,
            "largest_element_checked": elements[-1],
        },
    )


# -- criterion: two-series algebraic independence ------------------------------


def check_cri2(
    a_seq: ExponentSequence,
    u_seq: ExponentSequence,
    grid: Sequence[int] | None = None,
    *,
    epsilon: Fraction | None = None,
    policy: CriteriaPolicy | None = None,
    config: RunConfig | None = None,
) -> CriteriaReport:
    """Empirical verdicts for the two-series criterion: the first argument is
    the slower-growing exponent map a, the second the faster one u (callers
    must order them; the report would flag a misordering via the inverse-log
    divergence check anyway).

    Assumption names: ``a_log_ratio_diverges`` (log a(R)/log R increasing and
    unbounded), ``a_log_derivative_small`` ((log a)'(R) < R^(eps-1) with the
    ratio trending to zero), ``u_ratio_bounded`` (u(R+1)/u(R) bounded),
    ``inverse_log_ratio_diverges`` (log of a's inverse over log of u's
    inverse increasing and unbounded).
    """
    config = resolve_config(config)
    policy = policy or CriteriaPolicy()
    epsq = as_fraction(epsilon) if epsilon is not None else Fraction(1, 2)
    if not 0 < epsq < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    grid = grid if grid is not None else config.default_grid()
    # log log R must be positive for the log-power closed forms
    grid = _require_grid([g for g in grid if g >= 3])
    gridf = [float(g) for g in grid]

    ga = [a_seq.log_value(g) / math.log(g) for g in gridf]
    ok1, stats1 = trends_to_infinity(gridf, ga, policy)

    eps = float(epsq)
    deriv = [a_seq.dlog_value(g) for g in gridf]
    bound = [g ** (eps - 1.0) for g in gridf]
    holds = [d < b for d, b in zip(deriv, bound)]
    tail_holds = all(_tail(holds, policy.monotone_fraction))
    ok_zero, stats_zero = trends_to_zero(gridf, [d / b for d, b in zip(deriv, bound)], policy)
    ok2 = tail_holds and ok_zero
    stats2 = {"epsilon": eps, "tail_pointwise_holds": tail_holds, **stats_zero}

    uratio = [math.exp(u_seq.log_value(g + 1) - u_seq.log_value(g)) for g in gridf]
    ok3, stats3 = _bounded_tail(uratio, policy)
    stats3["fitted_ratio_constant"] = max(uratio)

    wvals = [
        math.log(a_seq.inverse_value(g)) / math.log(u_seq.inverse_value(g)) for g in gridf
    ]
    ok4, stats4 = trends_to_infinity(gridf, wvals, policy)

    def rep(name: str, ok: bool, stats: dict) -> AssumptionReport:
        return AssumptionReport(name, SUPPORTED if ok else VIOLATED, stats, tuple(grid))

    return CriteriaReport(
        "cri2",
        (
            rep("a_log_ratio_diverges", ok1, stats1),
            rep("a_log_derivative_small", ok2, stats2),
            rep("u_ratio_bounded", ok3, stats3),
            rep("inverse_log_ratio_diverges", ok4, stats4),
        ),
    )


# -- criterion: strict counting inequality ------------------------------------


def check_tra1(
    seq: ExponentSequence,
    a: int,
    delta,
    grid: Sequence[int] | None = None,
    *,
    config: RunConfig | None = None,
) -> CriteriaReport:
    """Exact evaluation of the strict inequality lambda(R) < R^(1/a - delta)
    on the grid; supported when hits exist up into the top decade (evidence
    that the inequality keeps recurring)."""
    config = resolve_config(config)
    if a < 1:
        raise DomainError("a must be a positive integer")
    deltaq = as_fraction(delta)
    grid = _require_grid(grid if grid is not None else config.default_grid())
    exponent = Fraction(1, a) - deltaq
    horizon = grid[-1] + 1
    support = support_up_to(seq, horizon, config)
    hits = []
    for g in grid:
        lam = support.count_below(g)
        # lam < g**(p/s)  <=>  lam**s < g**p  (exact integers; p <= 0 only
        # holds for lam = 0 since g >= 1)
        p, s = exponent.numerator, exponent.denominator
        if p <= 0:
            holds = lam == 0
        else:
            holds = lam**s < g**p
        if holds:
            hits.append(g)
    supported = bool(hits) and hits[-1] * 10 >= grid[-1]
    return CriteriaReport(
        "tra1",
        (
            AssumptionReport(
                "strict_count_bound",
                SUPPORTED if supported else VIOLATED,
                {
                    "exponent": float(exponent),
                    "hits": hits,
                    "largest_hit": hits[-1] if hits else None,
                    "grid_max": grid[-1],
                },
                tuple(grid),
            ),
        ),
    )
