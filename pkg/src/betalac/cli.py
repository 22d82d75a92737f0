"""Batch command-line front end.

One operation per subcommand; composition happens through files.  All real
inputs are parsed as exact decimals/rationals (no binary-float entry points),
outputs are deterministic byte-for-byte, and every JSON payload validates
against the schema shipped under ``betalac/schemas``.

Exit codes: 0 success, 1 usage error, 2 precondition/domain error,
3 success with indeterminate verdicts (so pipelines can detect them).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io as bio
from .algebraic import AlgebraicBase, BasePolynomial, classify_base
from .config import RunConfig, geometric_grid
from .criteria import (
    check_admissible,
    check_cri1,
    check_cri2,
    check_tra1,
    fit_growth_exponent,
    sigma_k,
)
from .digits import base_b_expand, beta_expand, lambda_digits
from .errors import BetalacError, TieUndecidable
from .intervals import as_fraction
from .sequences import SupportSet, sequence_from_json, support_up_to
from .series import RelationEvaluator, RelationPolynomial, SeriesSpec, evaluate
from .sumsets import gap_profile, k_fold_sum

USAGE_EXIT = 1
PRECONDITION_EXIT = 2
INDETERMINATE_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _parse_grid(text: str | None, config: RunConfig) -> list[int]:
    if text is None:
        return config.default_grid()
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be start:stop:points")
    return geometric_grid(int(parts[0]), int(parts[1]), int(parts[2]))


def _parse_eta_coords(text: str, base: AlgebraicBase):
    raw = text.strip()
    if raw.startswith("["):
        coords = [as_fraction(str(v)) for v in json.loads(raw)]
    else:
        coords = [as_fraction(raw)]
    coords += [Fraction(0)] * (base.degree - len(coords))
    return base.element(coords)


def _emit(payload: dict, args, config: RunConfig, csv_text: str | None = None) -> None:
    # explicit --format wins; file outputs default to the configured machine
    # format; the terminal defaults to human text
    if args.format:
        fmt = args.format
    elif args.output or config.output_path:
        fmt = config.output_format
    else:
        fmt = "text"
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        if csv_text is None:
            raise ValueError("this subcommand has no CSV rendering")
        text = csv_text
    else:
        text = payload.get("text", json.dumps(payload, indent=2)) + "\n"
    out_path = args.output or config.output_path
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _support_from_args(args, horizon: int, config: RunConfig) -> SupportSet:
    if args.seq:
        return support_up_to(sequence_from_json(args.seq), horizon, config)
    if args.elements:
        elems = [int(v) for v in args.elements.split(",") if v.strip()]
        return SupportSet.from_elements(elems, horizon)
    raise ValueError("need --seq or --elements")


def _report_payload(command: str, report) -> dict:
    return {"command": command, "report": report.to_dict(), "text": _report_text(report)}


def _report_text(report) -> str:
    lines = [f"criterion {report.criterion}: {report.verdict}"]
    for a in report.assumptions:
        lines.append(f"  {a.name:32s} {a.verdict}")
    return "\n".join(lines)


def _cmd_base_classify(args, config: RunConfig) -> int:
    poly = BasePolynomial.from_json(args.poly)
    cls = classify_base(poly, config)
    payload: dict = {"command": "base.classify", "classification": cls.value, "text": cls.value}
    if cls.value != "Neither":
        base = AlgebraicBase(poly, config)
        payload["beta"] = base.beta_enclosure(Fraction(1, 10**12)).to_decimal(15)
        payload["conjugates"] = [b.to_decimal(9) for b in base.conjugate_enclosures]
    _emit(payload, args, config)
    return 0


def _cmd_series_eval(args, config: RunConfig) -> int:
    from .errors import HorizonInsufficient
    from .series import _horizon_for_tail

    seq = sequence_from_json(args.seq)
    base = AlgebraicBase.from_json(args.base, config)
    width = bio.parse_width(args.width)
    if args.horizon:
        horizon = int(args.horizon)
    else:
        # enough support that the tail certificate can meet the width, sized
        # for a small coefficient bound; retried below if the sequence turns
        # out to carry larger coefficients
        horizon = max(64, 2 * _horizon_for_tail(4, base.beta_lower(), width / 2))
    spec = SeriesSpec.from_sequence(seq, horizon, config=config)
    try:
        value = evaluate(spec, base, width, config)
    except HorizonInsufficient as exc:
        if args.horizon or exc.needed is None:
            raise
        spec = SeriesSpec.from_sequence(seq, max(2 * exc.needed, 2 * horizon), config=config)
        value = evaluate(spec, base, width, config)
    d = value.enclosure.to_decimal(24)
    payload = {
        "command": "series.eval",
        "enclosure": d,
        "horizon_used": value.horizon_used,
        "tail_bound": str(value.tail_bound),
        "text": f"[{d['lower']}, {d['upper']}] (horizon {value.horizon_used})",
    }
    _emit(payload, args, config)
    return 0


def _make_digit_stream(args, config: RunConfig):
    n = int(args.count)
    if args.intbase:
        return base_b_expand(as_fraction(args.eta), int(args.intbase), n)
    base = AlgebraicBase.from_json(args.base, config)
    eta = _parse_eta_coords(args.eta, base)
    return beta_expand(eta, base, n, config)


def _cmd_digits_expand(args, config: RunConfig) -> int:
    stream = _make_digit_stream(args, config)
    payload = {
        "command": "digits.expand",
        "start_index": stream.start_index,
        "digits": list(stream.digits),
        "text": ",".join(map(str, stream.digits)),
    }
    _emit(payload, args, config, csv_text=bio.digits_to_csv(stream))
    return 0


def _cmd_digits_count(args, config: RunConfig) -> int:
    stream = _make_digit_stream(args, config)
    upto = int(args.upto) if args.upto else int(args.count)
    count = lambda_digits(stream, upto)
    payload = {
        "command": "digits.count",
        "upto": upto,
        "nonzero": count,
        "text": str(count),
    }
    _emit(payload, args, config)
    return 0


def _cmd_sumset_fold(args, config: RunConfig) -> int:
    horizon = int(args.horizon)
    support = _support_from_args(args, horizon, config)
    folded = k_fold_sum(support, int(args.k), horizon)
    if args.rle_out:
        with open(args.rle_out, "wb") as fh:
            fh.write(bio.support_to_rle(folded))
    payload = {
        "command": "sumset.fold",
        "k": int(args.k),
        "horizon": horizon,
        "size": len(folded),
        "elements": folded.elements.tolist() if len(folded) <= int(args.max_list) else None,
        "text": f"{len(folded)} elements below {horizon}",
    }
    _emit(payload, args, config, csv_text=bio.support_to_csv(folded))
    return 0


def _cmd_sumset_gaps(args, config: RunConfig) -> int:
    horizon = int(args.horizon)
    support = _support_from_args(args, horizon, config)
    folded = k_fold_sum(support, int(args.k), horizon)
    grid = [g for g in _parse_grid(args.grid, config) if g <= horizon]
    points = gap_profile(folded, grid)
    payload = {
        "command": "sumset.gaps",
        "points": [{"R": p.r, "gap": p.gap, "error": p.error} for p in points],
        "text": "\n".join(f"{p.r} {p.gap if p.gap is not None else p.error}" for p in points),
    }
    _emit(payload, args, config, csv_text=bio.gap_profile_to_csv(points))
    return 0


def _cmd_rho(args, config: RunConfig) -> int:
    from .series import rho_coefficients

    horizon = int(args.horizon)
    seqs = [sequence_from_json(s) for s in json.loads(args.seqs)]
    specs = [SeriesSpec.from_sequence(s, horizon, config=config) for s in seqs]
    k = tuple(int(v) for v in args.k.split(","))
    rho = rho_coefficients(specs, k, horizon)
    payload = {
        "command": "rho",
        "k": list(k),
        "horizon": horizon,
        "rho": rho,
        "text": ",".join(map(str, rho)),
    }
    _emit(payload, args, config, csv_text=bio.rho_to_csv(rho))
    return 0


def _cmd_yr_sweep(args, config: RunConfig) -> int:
    base = AlgebraicBase.from_json(args.base, config)
    rmax = int(args.rmax)
    width = bio.parse_width(args.width)
    seqs = [sequence_from_json(s) for s in json.loads(args.seqs)]
    poly = RelationPolynomial.from_json(base, args.poly_terms)
    # supports must reach beyond rmax by the tail length; grow generously
    from .series import _horizon_for_tail

    margin = _horizon_for_tail(4, base.beta_lower(), width / 8)
    horizon = rmax + 4 * margin + 64
    specs = [SeriesSpec.from_sequence(s, horizon, config=config) for s in seqs]
    ev = RelationEvaluator(specs, poly, config)
    rows = ev.sweep(rmax + 1, width)
    payload = {
        "command": "yr.sweep",
        "rows": [
            {"R": r, **enc.to_decimal(18), "verdict": verdict} for r, enc, verdict in rows
        ],
        "text": "\n".join(f"{r} {verdict}" for r, enc, verdict in rows),
    }
    _emit(payload, args, config, csv_text=bio.yr_sweep_to_csv(rows, 18))
    return INDETERMINATE_EXIT if any(v == "indeterminate" for _, _, v in rows) else 0


def _cmd_sigma(args, config: RunConfig) -> int:
    digits = int(args.digits)
    enc = sigma_k(int(args.k), Fraction(1, 10 ** (digits + 2)))
    d = enc.to_decimal(digits)
    recip = (1 / enc.upper, 1 / enc.lower)
    from .intervals import RealEnclosure

    rd = RealEnclosure(recip[0], recip[1]).to_decimal(digits)
    payload = {
        "command": "sigma",
        "k": int(args.k),
        "root": d,
        "reciprocal": rd,
        "text": f"sigma_{args.k} in [{d['lower']}, {d['upper']}], reciprocal in [{rd['lower']}, {rd['upper']}]",
    }
    _emit(payload, args, config)
    return 0


def _cmd_check(args, config: RunConfig) -> int:
    which = args.which
    if which == "admissible":
        try:
            ok = check_admissible(int(args.a), as_fraction(args.rho))
        except TieUndecidable as exc:
            payload = {
                "command": "check.admissible",
                "admissible": None,
                "note": str(exc),
                "text": "tie-undecidable",
            }
            _emit(payload, args, config)
            return INDETERMINATE_EXIT
        payload = {
            "command": "check.admissible",
            "admissible": ok,
            "text": "admissible" if ok else "not admissible",
        }
        _emit(payload, args, config)
        return 0
    grid = _parse_grid(args.grid, config)
    if which == "cri1":
        seqs = [sequence_from_json(s) for s in json.loads(args.seqs)]
        report = check_cri1(
            seqs,
            int(args.a),
            grid,
            delta=as_fraction(args.delta) if args.delta else None,
            k_cap=int(args.k_cap) if args.k_cap else None,
            config=config,
        )
    elif which == "cri2":
        report = check_cri2(
            sequence_from_json(args.a_seq),
            sequence_from_json(args.u_seq),
            grid,
            epsilon=as_fraction(args.epsilon) if args.epsilon else None,
            config=config,
        )
    else:
        report = check_tra1(
            sequence_from_json(args.seq),
            int(args.a),
            as_fraction(args.delta),
            grid,
            config=config,
        )
    _emit(_report_payload(f"check.{which}", report), args, config)
    return INDETERMINATE_EXIT if report.verdict == "indeterminate" else 0


def _cmd_fit(args, config: RunConfig) -> int:
    samples: list[tuple[Fraction, Fraction]] = []
    if args.points:
        for entry in args.points.split(","):
            r, v = entry.split(":")
            samples.append((as_fraction(r), as_fraction(v)))
    elif args.csv:
        with open(args.csv, "r", encoding="utf-8") as fh:
            rows = [line.strip() for line in fh if line.strip()]
        for line in rows[1:] if "," in rows[0] and not rows[0][0].isdigit() else rows:
            r, v = line.split(",")[:2]
            samples.append((as_fraction(r), as_fraction(v)))
    else:
        raise ValueError("need --points or --csv")
    fit = fit_growth_exponent(samples)
    payload = {
        "command": "fit.exponent",
        "slope": fit.slope,
        "intercept": fit.intercept,
        "residual": fit.residual,
        "text": f"slope {fit.slope:.6f} residual {fit.residual:.3g}",
    }
    _emit(payload, args, config)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="betalac", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--config", help="JSON file with RunConfig fields")
    parser.add_argument("--format", choices=["text", "json", "csv"], default=None)
    parser.add_argument("--output", help="write output to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    base = sub.add_parser("base", help="algebraic base operations")
    base_sub = base.add_subparsers(dest="subcommand", required=True)
    cls = base_sub.add_parser("classify", help="classify a monic integer polynomial")
    cls.add_argument("--poly", required=True, help='ascending coefficients, e.g. "[-1,-1,1]"')
    cls.set_defaults(func=_cmd_base_classify)

    series = sub.add_parser("series", help="series values")
    series_sub = series.add_subparsers(dest="subcommand", required=True)
    ev = series_sub.add_parser("eval", help="enclose the series value at 1/beta")
    ev.add_argument("--seq", required=True)
    ev.add_argument("--base", required=True)
    ev.add_argument("--width", required=True)
    ev.add_argument("--horizon")
    ev.set_defaults(func=_cmd_series_eval)

    digits = sub.add_parser("digits", help="greedy expansions")
    digits_sub = digits.add_subparsers(dest="subcommand", required=True)
    for name, fn in (("expand", _cmd_digits_expand), ("count", _cmd_digits_count)):
        p = digits_sub.add_parser(name)
        p.add_argument("--base", help="minimal polynomial JSON (field digits)")
        p.add_argument("--intbase", help="integer base b >= 2 (positional digits)")
        p.add_argument("--eta", required=True, help="rational, or coordinate JSON array")
        p.add_argument("--count", required=True, help="number of digits to produce")
        if name == "count":
            p.add_argument("--upto", help="count nonzero digits below/at this index")
        p.set_defaults(func=fn)

    sumset = sub.add_parser("sumset", help="Minkowski sums and gap profiles")
    sumset_sub = sumset.add_subparsers(dest="subcommand", required=True)
    fold = sumset_sub.add_parser("fold")
    gaps = sumset_sub.add_parser("gaps")
    for p in (fold, gaps):
        p.add_argument("--seq", help="sequence JSON")
        p.add_argument("--elements", help="comma-separated explicit elements")
        p.add_argument("--k", required=True)
        p.add_argument("--horizon", required=True)
    fold.add_argument("--rle-out", help="also write the run-length binary form here")
    fold.add_argument("--max-list", default="10000", help="omit element list above this size")
    gaps.add_argument("--grid", help="geometric grid start:stop:points")
    fold.set_defaults(func=_cmd_sumset_fold)
    gaps.set_defaults(func=_cmd_sumset_gaps)

    rho = sub.add_parser("rho", help="representation-count coefficients")
    rho.add_argument("--seqs", required=True, help="JSON list of sequence specs")
    rho.add_argument("--k", required=True, help="comma-separated exponents, one per series")
    rho.add_argument("--horizon", required=True)
    rho.set_defaults(func=_cmd_rho)

    yr = sub.add_parser("yr", help="relation tail quantities")
    yr_sub = yr.add_subparsers(dest="subcommand", required=True)
    sweep = yr_sub.add_parser("sweep")
    sweep.add_argument("--seqs", required=True)
    sweep.add_argument("--poly-terms", required=True, help='[{"k":[1,0],"coeff":["1","0"]},...]')
    sweep.add_argument("--base", required=True)
    sweep.add_argument("--rmax", required=True)
    sweep.add_argument("--width", required=True)
    sweep.set_defaults(func=_cmd_yr_sweep)

    sigma = sub.add_parser("sigma", help="threshold-root enclosures")
    sigma.add_argument("--k", required=True)
    sigma.add_argument("--digits", default="12")
    sigma.set_defaults(func=_cmd_sigma)

    check = sub.add_parser("check", help="criteria hypothesis checkers")
    check_sub = check.add_subparsers(dest="which", required=True)
    adm = check_sub.add_parser("admissible")
    adm.add_argument("--a", "--A", dest="a", required=True)
    adm.add_argument("--rho", required=True)
    cri1 = check_sub.add_parser("cri1")
    cri1.add_argument("--seqs", required=True)
    cri1.add_argument("--a", "--A", dest="a", required=True)
    cri1.add_argument("--delta")
    cri1.add_argument("--k-cap")
    cri1.add_argument("--grid")
    cri2 = check_sub.add_parser("cri2")
    cri2.add_argument("--a-seq", required=True)
    cri2.add_argument("--u-seq", required=True)
    cri2.add_argument("--epsilon")
    cri2.add_argument("--grid")
    tra1 = check_sub.add_parser("tra1")
    tra1.add_argument("--seq", required=True)
    tra1.add_argument("--a", "--A", dest="a", required=True)
    tra1.add_argument("--delta", required=True)
    tra1.add_argument("--grid")
    for p in (adm, cri1, cri2, tra1):
        p.set_defaults(func=_cmd_check)

    fit = sub.add_parser("fit", help="power-law exponent fits")
    fit_sub = fit.add_subparsers(dest="subcommand", required=True)
    fe = fit_sub.add_parser("exponent")
    fe.add_argument("--points", help='comma list "R:value,R:value,..."')
    fe.add_argument("--csv", help="CSV file with R,value rows")
    fe.set_defaults(func=_cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_json_file(args.config) if args.config else RunConfig()
        return args.func(args, config)
    except BetalacError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return PRECONDITION_EXIT
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return PRECONDITION_EXIT
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
