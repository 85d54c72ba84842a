"""Command-line interface.

Subcommands: reconstruct | amplitude | pst | ese | family | scan | plot-data.
All numeric output uses 15 significant digits so identical invocations are
bit-identical; exact rationals are printed as p/q where applicable.
Exit codes: 0 success, 2 validation/usage error, 3 certification mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import families
from .certify import detect_ese
from .dynamics import amplitude_series, probability_curves, verify_pst, write_plot_csv
from .errors import PstLabError
from .reconstruct import reconstruct_general, reconstruct_symmetric
from .spectrum import parse_spectrum, to_symmetric, validate_pst

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_MISMATCH = 3


def _g(x: float) -> str:
    return format(float(x), ".15g")


def _coef(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return _g(c)


def _json_coef(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return float(c)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pstlab",
        description="Spin-chain couplings from prescribed spectra; perfect state "
                    "transfer and certified early-state-exclusion detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spectrum(p):
        p.add_argument("-s", "--spectrum", required=True,
                       help="eigenvalues, e.g. \"0,±1,±2,±3\" (ASCII +- works) or a JSON array")

    p = sub.add_parser("reconstruct", help="couplings of the matrix with the given spectrum")
    add_spectrum(p)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("amplitude", help="return-amplitude cosine series of a symmetric spectrum")
    add_spectrum(p)
    p.add_argument("--at", type=float, default=None, help="also evaluate the series at this time")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("pst", help="first transfer time and achieved fidelity")
    add_spectrum(p)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("ese", help="count and locate early exclusion events")
    add_spectrum(p)
    p.add_argument("--method", choices=["auto", "exact", "numeric"], default="auto")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("family", help="verify a built-in family member")
    p.add_argument("--thm", choices=["3.2", "3.4"], required=True,
                   help="family id: 3.2 = no-exclusion {0,±1,±2m,±(2m+1)}, "
                        "3.4 = exclusion {0,±(2m+1),±(2m+2),±(2m+3)}")
    p.add_argument("-m", type=int, required=True, help="family parameter m >= 1")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("scan", help="divisibility-conjecture scan over coprime triples")
    p.add_argument("--zmax", type=int, required=True, help="largest eigenvalue to scan")
    p.add_argument("-o", "--output", default=None, help="write the full table as CSV here")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("plot-data", help="site-occupation probability curves as CSV")
    add_spectrum(p)
    p.add_argument("--grid", type=int, default=2000, help="number of time steps")
    p.add_argument("-o", "--output", required=True, help="output CSV path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return _dispatch(args)
    except PstLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def _dispatch(args) -> int:
    return {
        "reconstruct": _cmd_reconstruct,
        "amplitude": _cmd_amplitude,
        "pst": _cmd_pst,
        "ese": _cmd_ese,
        "family": _cmd_family,
        "scan": _cmd_scan,
        "plot-data": _cmd_plot_data,
    }[args.command](args)


def _reconstruct(spec):
    # symmetric spectra get the specialized path: exactly zero diagonal
    if spec.is_symmetric:
        return reconstruct_symmetric(to_symmetric(spec))
    return reconstruct_general(spec)


def _cmd_reconstruct(args) -> int:
    spec = parse_spectrum(args.spectrum)
    J = _reconstruct(spec)
    info = validate_pst(spec)
    if args.format == "json":
        out = J.to_json_dict()
        out["pst"] = {"admissible": info.admissible,
                      "T": info.first_time if info.admissible else None}
        print(json.dumps(out, default=float))
        return EXIT_OK
    print(f"order {J.n} Jacobi matrix for spectrum "
          + ",".join(_g(v) for v in spec.values))
    print("a: " + " ".join(_g(v) for v in J.diag))
    print("b: " + " ".join(_g(v) for v in J.offdiag))
    if info.admissible:
        print(f"pst: admissible, T = {_g(info.first_time)}")
    else:
        print("pst: not admissible")
    return EXIT_OK


def _cmd_amplitude(args) -> int:
    spec = parse_spectrum(args.spectrum)
    series = amplitude_series(to_symmetric(spec))
    if args.format == "json":
        out = {"c0": _json_coef(series.c0),
               "terms": [{"frequency": float(f), "coefficient": _json_coef(c)}
                         for f, c in series.terms]}
        if args.at is not None:
            from .dynamics import evaluate
            out["value_at"] = {"t": args.at, "A": evaluate(series, args.at)}
        print(json.dumps(out))
        return EXIT_OK
    print(f"A(t) = {_coef(series.c0)} + "
          + " + ".join(f"{_coef(c)} cos({_g(f)} t)" for f, c in series.terms))
    if args.at is not None:
        from .dynamics import evaluate
        print(f"A({_g(args.at)}) = {_g(evaluate(series, args.at))}")
    return EXIT_OK


def _cmd_pst(args) -> int:
    spec = parse_spectrum(args.spectrum)
    info = validate_pst(spec)
    if not info.admissible:
        if args.format == "json":
            print(json.dumps({"admissible": False}))
        else:
            print("not admissible")
        return EXIT_OK
    J = _reconstruct(spec)
    fidelity, phase = verify_pst(J, info.first_time)
    if args.format == "json":
        print(json.dumps({
            "admissible": True, "T": info.first_time,
            "gap_multipliers": list(info.gap_multipliers),
            "fidelity": fidelity, "phase": phase,
        }))
        return EXIT_OK
    print(f"T = {_g(info.first_time)}")
    print(f"gap multipliers: {' '.join(str(v) for v in info.gap_multipliers)}")
    print(f"fidelity = {_g(fidelity)}")
    print(f"phase = {_g(phase)}")
    return EXIT_OK


def _cmd_ese(args) -> int:
    spec = parse_spectrum(args.spectrum)
    report = detect_ese(spec, method=args.method)
    if args.format == "json":
        print(json.dumps(report.to_json_dict()))
        return EXIT_OK
    print(f"spectrum: {','.join(_g(v) for v in report.spectrum)}")
    print(f"T = {_g(report.pst_time)}")
    print(f"method: {report.method}")
    print(f"count: {report.count}")
    for r in report.roots:
        print(f"  tau = {_g(r.tau)}  in ({_g(r.lo)}, {_g(r.hi)})")
    return EXIT_OK


def _cmd_family(args) -> int:
    case = (families.family_no_ese if args.thm == "3.2" else families.family_ese)(args.m)
    report, ok = families.verify_family(case)
    if args.format == "json":
        out = report.to_json_dict()
        out["expected"] = case.expected_ese
        out["verified"] = ok
        print(json.dumps(out))
        return EXIT_OK if ok else EXIT_MISMATCH
    spectrum = case.spectrum.to_spectrum()
    print(f"family {args.thm}, m = {case.m}: spectrum "
          + ",".join(_g(v) for v in spectrum.values))
    print(f"expected events: {case.expected_ese}")
    print(f"certified events: {report.count} ({report.method})")
    print("verified" if ok else "MISMATCH")
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_scan(args) -> int:
    workers = int(os.environ.get("PSTLAB_THREADS", "1"))
    records = families.conjecture_scan(args.zmax, workers=workers)
    bad = families.counterexamples(records)
    if args.output:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            families.scan_to_csv(records, fh)
    if args.format == "json":
        print(json.dumps({"zmax": args.zmax,
                          "records": families.scan_records_json(records),
                          "counterexamples": families.scan_records_json(bad)}))
        return EXIT_OK
    if args.format == "csv":
        families.scan_to_csv(records, sys.stdout)
        return EXIT_OK
    print(f"scanned {len(records)} coprime admissible triples up to {args.zmax}")
    agree = sum(1 for r in records if r.agrees_with_conjecture)
    print(f"agreeing with the divisibility conjecture: {agree}/{len(records)}")
    if bad:
        print("COUNTEREXAMPLES:")
        for r in bad:
            print(f"  ({r.a},{r.b},{r.c}) divisible={r.divisible} events={r.ese_count}")
    else:
        print("no counterexamples found")
    return EXIT_OK


def _cmd_plot_data(args) -> int:
    spec = parse_spectrum(args.spectrum)
    info = validate_pst(spec)
    t_max = info.first_time if info.admissible else math.pi
    J = _reconstruct(spec)
    ts = np.linspace(0.0, t_max, args.grid + 1)
    p_first, p_last = probability_curves(J, ts)
    write_plot_csv(args.output, ts, p_first, p_last)
    print(f"wrote {len(ts)} samples on [0, {_g(t_max)}] to {args.output}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
