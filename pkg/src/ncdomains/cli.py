"""Command line entry point: orchestrates the verification suites and emits
machine-readable reports.

Exit code is 0 iff every executed check passed.  All randomized inputs come
from a seeded generator whose seed is echoed in the report.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import verify
from .berezin import domain_membership
from .cauchy import joint_spectral_radius, radius_inequality_check
from .corpus import builtin_corpus
from .report import CheckTimer, VerificationReport
from .serialization import (dump_json, load_json, operator_from_json,
                            operator_to_json, symbol_from_json,
                            symbol_to_json, tuple_from_json)
from .toeplitz import (MultiToeplitzSymbol, fourier_coefficients,
                       is_multi_toeplitz, max_block_difference,
                       symbol_to_operator)
from .weights import DomainSpec, weights_by_convolution, weights_by_factorization


def resolve_spec(name_or_path: str) -> DomainSpec:
    corpus = builtin_corpus()
    if name_or_path in corpus:
        return corpus[name_or_path]
    return DomainSpec.from_json(load_json(name_or_path))


def add_common(p: argparse.ArgumentParser, spec_required: bool = True) -> None:
    p.add_argument("--spec", required=spec_required,
                   help="builtin spec name or path to a spec JSON file")
    p.add_argument("--max-len", type=int, default=4, metavar="N",
                   help="truncation depth (default 4)")
    p.add_argument("--aux-dim", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--radii", default="0.3,0.5,0.7,0.9",
                   help="comma-separated radius grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="report/output path")
    p.add_argument("--format", choices=("json", "csv"), default=None)


def parse_radii(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x.strip()]


def finish(report: VerificationReport, out: str | None) -> int:
    for c in report.checks:
        res = "" if c.residual is None else f"  residual={c.residual:.3e}"
        tol = "" if c.tolerance is None else f" tol={c.tolerance:.0e}"
        print(f"[{c.status:>6}] {c.check_id}{res}{tol}")
    n_fail = len(report.failures)
    print(f"{len(report.checks)} checks, {n_fail} failed")
    if out:
        dump_json(report.to_json(), out)
        print(f"report written to {out}")
    return 0 if report.passed else 1


def cmd_weights(args) -> int:
    spec = resolve_spec(args.spec)
    report = VerificationReport({"command": "weights", "spec": spec.to_json(),
                                 "N": args.max_len})
    table = verify.weights_suite(spec, args.max_len, report)
    if args.out:
        if (args.format or "csv") == "csv":
            table.to_csv(args.out)
        else:
            dump_json({"spec": spec.to_json(), "N": table.N,
                       "weights": [{"word": list(w),
                                    "numerator": v.numerator,
                                    "denominator": v.denominator,
                                    "float_value": float(v)}
                                   for w, v in sorted(table.b.items(),
                                                      key=lambda t: (len(t[0]), t[0]))]},
                      args.out)
        print(f"weight table written to {args.out}")
        return 0 if report.passed else 1
    return finish(report, None)


def cmd_model(args) -> int:
    spec = resolve_spec(args.spec)
    report = VerificationReport({"command": "model", "spec": spec.to_json(),
                                 "N": args.max_len, "tol": args.tol})
    table = verify.build_table(spec, args.max_len)
    verify.model_suite(spec, table, args.max_len, report, tol=args.tol)
    return finish(report, args.out)


def cmd_toeplitz(args) -> int:
    spec = resolve_spec(args.spec)
    N = args.max_len
    table = verify.build_table(spec, N)
    report = VerificationReport({"command": "toeplitz", "spec": spec.to_json(),
                                 "N": N, "seed": args.seed, "tol": args.tol})
    t = CheckTimer(report)
    if args.op:
        T = operator_from_json(load_json(args.op))
        rep = is_multi_toeplitz(T, table, tol=args.tol)
        t.flag("toeplitz.check",
               "operator satisfies the weighted shift-invariance relations",
               rep.is_toeplitz,
               {"worst_structure_residual": rep.worst_structure_residual,
                "worst_incomparable_entry": rep.worst_incomparable_entry,
                "structure_witness": [list(w) for w in rep.structure_witness[:2]]
                + [rep.structure_witness[2]] if rep.structure_witness else None,
                "incomparable_witness": [list(w) for w in rep.incomparable_witness]
                if rep.incomparable_witness else None})
        if rep.is_toeplitz and args.out:
            sym = fourier_coefficients(T, table, N)
            dump_json(symbol_to_json(sym), args.out)
            print(f"symbol written to {args.out}")
        return finish(report, None)
    if args.symbol:
        sym = symbol_from_json(load_json(args.symbol))
        T = symbol_to_operator(sym, table, args.radius, N)
        rec = fourier_coefficients(T, table, N)
        scaled = MultiToeplitzSymbol(
            sym.aux_dim,
            {w: blk * args.radius ** len(w) for w, blk in sym.A.items()},
            {w: blk * args.radius ** len(w) for w, blk in sym.B.items()})
        t.check("toeplitz.roundtrip",
                "symbol -> operator -> Fourier coefficients round trip",
                max_block_difference(scaled, rec), args.tol)
        if args.out:
            dump_json(operator_to_json(T), args.out)
            print(f"operator written to {args.out}")
        return finish(report, None)
    verify.toeplitz_suite(spec, table, N, report, seed=args.seed)
    return finish(report, args.out)


def cmd_berezin(args) -> int:
    spec = resolve_spec(args.spec)
    N = args.max_len
    table = verify.build_table(spec, N)
    report = VerificationReport({"command": "berezin", "spec": spec.to_json(),
                                 "N": N, "seed": args.seed})
    if args.tuple:
        X = tuple_from_json(load_json(args.tuple), spec)
        mem = domain_membership(spec, X, tol=args.tol)
        t = CheckTimer(report)
        t.flag("berezin.membership",
               "all defect operators of the tuple are positive semidefinite",
               mem.in_domain, {"min_eigenvalues": mem.min_eigenvalues,
                               "pure": mem.pure})
        return finish(report, args.out)
    verify.berezin_suite(spec, table, N, report, seed=args.seed)
    return finish(report, args.out)


def cmd_pluriharmonic(args) -> int:
    spec = resolve_spec(args.spec)
    N = args.max_len
    table = verify.build_table(spec, N)
    report = VerificationReport({"command": "pluriharmonic",
                                 "spec": spec.to_json(), "N": N,
                                 "seed": args.seed,
                                 "radii": parse_radii(args.radii)})
    verify.pluriharmonic_suite(spec, table, N, report, seed=args.seed)
    return finish(report, args.out)


def cmd_cauchy(args) -> int:
    spec = resolve_spec(args.spec)
    N = args.max_len
    table = verify.build_table(spec, N)
    report = VerificationReport({"command": "cauchy", "spec": spec.to_json(),
                                 "N": N, "seed": args.seed})
    if args.tuple:
        X = tuple_from_json(load_json(args.tuple), spec)
        r = joint_spectral_radius(spec, X)
        t = CheckTimer(report)
        t.flag("cauchy.gate", "joint spectral radius below the calculus gate",
               r.gate, {"r_exact": r.r_exact,
                        "sequence_tail": r.r_sequence[-3:]})
        ineq = radius_inequality_check(spec, X, N, table)
        t.flag("cauchy.radius_inequality",
               "reconstruction-operator powers below the CP-map power bound",
               ineq.passed, {"margins": ineq.margins})
        return finish(report, args.out)
    verify.cauchy_suite(spec, table, N, report, seed=args.seed)
    return finish(report, args.out)


def cmd_verify_all(args) -> int:
    N = args.max_len
    report = VerificationReport({"command": "verify-all", "N": N,
                                 "seed": args.seed})
    t0 = time.perf_counter()
    for name, spec in builtin_corpus().items():
        verify.full_suite(spec, N, report, seed=args.seed, label=f".{name}")
    report.config["elapsed_seconds"] = time.perf_counter() - t0
    print(f"corpus run took {report.config['elapsed_seconds']:.1f} s")
    return finish(report, args.out)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ncdomains",
        description="verification harness for truncated universal models on "
                    "noncommutative regular domains")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="weight tables and oracle checks")
    add_common(p)
    p.set_defaults(fn=cmd_weights)

    p = sub.add_parser("model", help="universal model identities")
    add_common(p)
    p.set_defaults(fn=cmd_model)

    p = sub.add_parser("toeplitz", help="multi-Toeplitz structure and symbols")
    add_common(p)
    p.add_argument("--op", default=None, help="operator JSON to check")
    p.add_argument("--symbol", default=None, help="symbol JSON to assemble")
    p.add_argument("--radius", type=float, default=1.0)
    p.set_defaults(fn=cmd_toeplitz)

    p = sub.add_parser("berezin", help="membership, purity, Berezin identities")
    add_common(p)
    p.add_argument("--tuple", default=None, help="operator tuple JSON")
    p.set_defaults(fn=cmd_berezin)

    p = sub.add_parser("pluriharmonic", help="Gamma kernel, metric, limits")
    add_common(p)
    p.set_defaults(fn=cmd_pluriharmonic)

    p = sub.add_parser("cauchy", help="spectral radii and functional calculus")
    add_common(p)
    p.add_argument("--tuple", default=None, help="operator tuple JSON")
    p.set_defaults(fn=cmd_cauchy)

    p = sub.add_parser("verify-all", help="full suite over the builtin corpus")
    add_common(p, spec_required=False)
    p.set_defaults(fn=cmd_verify_all)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
