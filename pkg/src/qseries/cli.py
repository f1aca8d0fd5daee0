"""Command-line interface.

Subcommands: ``eval`` (function values), ``addseq`` (sequence construction),
``minima`` (successive-minima tables), ``verify`` (theorem checks), and
``bench`` (normalized-cost curve and benchmark-table structure).  Output is
JSON by default; ``--format tsv`` suits plotting pipelines.  Exit codes:
0 success, 1 numeric/domain error (JSON error object on stdout), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import addseq, bench, bsgs, evaluator, modcount, theorems
from .exponents import ExponentKind, exponent

_KINDS = {k.value: k for k in ExponentKind}

_STATEMENT_IDS = {
    "pentagonal-add": (ExponentKind.PENTAGONAL, "add"),
    "pentagonal-double-add": (ExponentKind.PENTAGONAL, "double_add"),
    "trigonal-add": (ExponentKind.TRIGONAL, "add"),
    "trigonal-double-add": (ExponentKind.TRIGONAL, "double_add"),
    "trigonal-triple-sum": (ExponentKind.TRIGONAL, "triple_sum"),
    "almost-square-add": (ExponentKind.ALMOST_SQUARE, "add"),
    "almost-square-double-add": (ExponentKind.ALMOST_SQUARE, "double_add"),
    "almost-square-triple-sum": (ExponentKind.ALMOST_SQUARE, "triple_sum"),
}

_NUMERIC_ERRORS = (
    evaluator.NotUpperHalfPlane, evaluator.QTooLarge,
    bsgs.PrecisionUnderflow, bsgs.MismatchedModulus,
    modcount.NotPrime, theorems.LeadingCoefficientNonpositive,
    ValueError, ZeroDivisionError, OverflowError,
)


def _parser():
    p = argparse.ArgumentParser(prog="qseries")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "plain"),
                        default="json")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate eta or theta constants",
                        parents=[common])
    pe.add_argument("--func", required=True, choices=evaluator.FUNCTIONS)
    pe.add_argument("--tau", nargs=2, metavar=("RE", "IM"))
    pe.add_argument("--q", nargs=2, metavar=("RE", "IM"))
    pe.add_argument("--prec", type=int, required=True)
    pe.add_argument("--method", choices=evaluator.METHODS, default="auto")
    pe.add_argument("--report", action="store_true",
                    help="include T, N, op counts and modeled cost")
    pe.add_argument("--no-precision-trick", action="store_true")

    pa = sub.add_parser("addseq", parents=[common], help="build an addition sequence")
    pa.add_argument("--kind", required=True, choices=sorted(_KINDS))
    pa.add_argument("--terms", type=int, required=True)
    pa.add_argument("--algo", choices=("classical", "generic", "optimized"),
                    default="optimized")
    pa.add_argument("--cost", choices=("fft", "schoolbook"), default="fft")
    pa.add_argument("--emit", action="store_true",
                    help="emit the steps themselves, one per line")

    pm = sub.add_parser("minima", parents=[common], help="successive minima of count(m)/m")
    pm.add_argument("--kind", required=True,
                    choices=("square", "trigonal", "pentagonal"))
    pm.add_argument("--limit", type=int, required=True)

    pv = sub.add_parser("verify", parents=[common], help="check a decomposition/number theorem")
    pv.add_argument("--statement", required=True,
                    choices=sorted(_STATEMENT_IDS) + ["powers-of-three",
                                                       "pell-double",
                                                       "pell-triple",
                                                       "prime-density"])
    pv.add_argument("--limit", type=int, required=True)
    pv.add_argument("--poly", default="4,0,1",
                    help="a2,a1,a0 for prime-density")

    pb = sub.add_parser("bench", parents=[common], help="cost-model data")
    group = pb.add_mutually_exclusive_group(required=True)
    group.add_argument("--curve", action="store_true",
                       help="normalized-cost columns per truncation order")
    group.add_argument("--tables", action="store_true",
                       help="benchmark table structure with theory speed-ups")
    pb.add_argument("--points", default="1000,10000,100000,1000000,10000000",
                    help="comma-separated truncation orders for --curve")
    pb.add_argument("--prec", default="1000,10000,100000",
                    help="comma-separated bit precisions for --tables")
    pb.add_argument("--table", choices=bench.TABLES, default="eta")
    return p


def _emit(args, rows, columns):
    if args.format == "json":
        print(json.dumps(rows, indent=None))
    else:
        sep = "\t" if args.format == "tsv" else "  "
        for row in rows:
            print(sep.join(str(row[c]) for c in columns))


def _cmd_eval(args):
    if (args.tau is None) == (args.q is None):
        raise ValueError("exactly one of --tau and --q is required")
    req = evaluator.EvalRequest(
        function=args.func, prec=args.prec,
        tau=tuple(args.tau) if args.tau else None,
        q=tuple(args.q) if args.q else None,
        method=args.method,
        precision_trick=not args.no_precision_trick)
    rep = evaluator.evaluate(req)
    out = {}
    for name, v in rep.values.items():
        dec = v.to_decimal()
        hx = v.to_hex()
        out[name] = {"re": dec[0], "im": dec[1],
                     "re_hex": hx[0], "im_hex": hx[1], "prec": v.prec}
    doc = {"values": out, "prec": args.prec, "method": rep.method}
    if args.report:
        doc.update({"T": rep.T, "N": rep.N, "m": rep.m,
                    "complex_muls": rep.mul, "complex_sqrs": rep.sqr,
                    "modeled_cost_fft": rep.modeled_cost})
    if args.format == "json":
        print(json.dumps(doc))
    else:
        for name, v in out.items():
            print(f"{name} {v['re']} {v['im']}")
        if args.report:
            print(f"T {rep.T} N {rep.N} m {rep.m} mul {rep.mul} sqr {rep.sqr}")
    return 0


def _build_for_cli(kind, algo, terms):
    if algo == "classical":
        return addseq.build_classical(kind, terms)
    if algo == "generic":
        targets = [exponent(kind, i) for i in range(1, terms + 1)]
        return addseq.complete_generic([t for t in targets if t > 0])
    if kind is ExponentKind.QUARTER_SQUARE:
        return addseq.build_quarter_square(terms)
    if kind is ExponentKind.A182568:
        return addseq.build_a182568(terms)
    return addseq.build_optimized(kind, terms)


def _cmd_addseq(args):
    kind = _KINDS[args.kind]
    seq = _build_for_cli(kind, args.algo, args.terms)
    problem = addseq.validate(seq)
    if problem is not None:
        raise AssertionError(f"built sequence failed validation: {problem}")
    if args.emit:
        sys.stdout.write(addseq.dump_text(seq))
        return 0
    model = addseq.FFT if args.cost == "fft" else addseq.SCHOOLBOOK
    nd, na, ndd, nt = seq.counts
    doc = {"kind": args.kind, "terms": args.terms, "algo": args.algo,
           "elements": len(seq.elements), "double": nd, "add": na,
           "double_add": ndd, "triple": nt,
           "cost": float(addseq.cost(seq, model)),
           "normalized_fft": addseq.normalized_cost(seq, args.terms)}
    _emit(args, [doc], list(doc))
    return 0


def _cmd_minima(args):
    kind = _KINDS[args.kind]
    if args.limit <= 10**8:
        table = modcount.default_table(kind)
        entries = [(m, c) for m, c in table.entries if m <= args.limit]
        if not entries or args.limit > table.entries[-1][0]:
            table = modcount.successive_minima(kind, args.limit)
            entries = list(table.entries)
    else:
        table = modcount.successive_minima(kind, args.limit)
        entries = list(table.entries)
    rows = [{"k": i + 1, "m": m, "count": c, "ratio": c / m}
            for i, (m, c) in enumerate(entries)]
    _emit(args, rows, ["k", "m", "count", "ratio"])
    return 0


def _cmd_verify(args):
    if args.statement in _STATEMENT_IDS:
        kind, form = _STATEMENT_IDS[args.statement]
        report = theorems.verify_decomposition(kind, form, args.limit)
        doc = report.as_dict()
    elif args.statement == "powers-of-three":
        doc = theorems.powers_of_three_check(min(args.limit, 120)).as_dict()
    elif args.statement in ("pell-double", "pell-triple"):
        family = (theorems.PENTAGONAL_DOUBLE if args.statement == "pell-double"
                  else theorems.PENTAGONAL_TRIPLE)
        scan = theorems.pell_exhaustive(family, args.limit)
        rec = []
        k = 1
        while len(rec) < len(scan) + 1 and k <= 40:
            rec = [p for p in theorems.pell_family(family, k) if p[0] <= args.limit]
            k += 1
        doc = {"statement": args.statement, "limit": args.limit,
               "recurrence": rec, "exhaustive": scan, "passed": rec == scan}
    else:
        poly = tuple(int(x) for x in args.poly.split(","))
        count, c_hat = theorems.prime_density(poly, args.limit)
        doc = {"statement": "prime-density", "poly": list(poly),
               "N": args.limit, "prime_count": count, "c_hat": c_hat}
    print(json.dumps(doc))
    return 0 if doc.get("passed", True) else 1


def _cmd_bench(args):
    if args.curve:
        T_list = [int(x) for x in args.points.split(",")]
        rows = bsgs.cost_curve(T_list)
        _emit(args, rows, ["T", "N", "classical", "optimized", "bsgs"])
    else:
        precs = [int(x) for x in args.prec.split(",")]
        rows = [r.as_dict() for r in bench.benchmark_rows(args.table, precs)]
        _emit(args, rows, ["prec", "T", "N", "as_cost", "bsgs_cost",
                           "theory_speedup"])
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handlers = {"eval": _cmd_eval, "addseq": _cmd_addseq, "minima": _cmd_minima,
                "verify": _cmd_verify, "bench": _cmd_bench}
    try:
        return handlers[args.command](args)
    except _NUMERIC_ERRORS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
