"""Command-line front end: ``radixpi <command> [options]``.

Exit codes: 0 ok, 1 verification failure, 2 unknown formula or usage
error, 3 digit count over the cap, 4 I/O error.  csv and json-lines output
never contains timings, so it is byte-stable across runs; wall time goes to
stderr for those formats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from typing import Sequence

from radixpi.catalog import (
    MATCH_THRESHOLD,
    SERIES_TARGETS,
    UnknownFormulaError,
    compatibility_report,
    export_registry,
    get_formula,
    series_target,
    series_value,
    verify_exact_identities,
    verify_numeric_identities,
)
from radixpi.context import RealContext, bits_for_digits, format_real, format_sci
from radixpi.geometry import CLAIMED_ERROR, CONSTRUCTIONS, verify_figure2_relations
from radixpi.radical_engine import DigitCapError, compute_pi_detailed, convergence_table, default_digit_cap

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_UNKNOWN = 2
EXIT_CAP = 3
EXIT_IO = 4

FORMATS = ("plain", "csv", "json-lines")
VERIFY_PRECISION = 256


class _Out:
    def __init__(self, fmt: str, stream) -> None:
        self.fmt = fmt
        self.stream = stream
        self._writer = csv.writer(stream, lineterminator="\n") if fmt == "csv" else None

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def row(self, values: Sequence) -> None:
        self._writer.writerow(values)

    def record(self, obj: dict) -> None:
        self.stream.write(json.dumps(obj, sort_keys=False) + "\n")


def _formula(formula_id: str):
    try:
        return get_formula(formula_id)
    except UnknownFormulaError:
        print(f"radixpi: unknown formula {formula_id!r}", file=sys.stderr)
        return None


def _report_time(out: _Out, seconds: float) -> None:
    if out.fmt == "plain":
        out.line(f"wall_time_s: {seconds:.3f}")
    else:
        print(f"wall_time_s: {seconds:.3f}", file=sys.stderr)


def cmd_compute(args, out: _Out) -> int:
    spec = _formula(args.formula)
    if spec is None:
        return EXIT_UNKNOWN
    cap = args.max_digits if args.max_digits is not None else default_digit_cap()
    start = time.perf_counter()
    try:
        result = compute_pi_detailed(spec, args.digits, cap)
    except DigitCapError as exc:
        print(f"radixpi: {exc}", file=sys.stderr)
        return EXIT_CAP
    elapsed = time.perf_counter() - start
    if out.fmt == "plain":
        out.line(result.digits)
        out.line(f"formula: {spec.id}")
        out.line(f"k: {result.k}")
        out.line(f"precision_bits: {result.precision_bits}")
    elif out.fmt == "csv":
        out.row(["formula", "digits", "k", "precision_bits", "pi"])
        out.row([spec.id, args.digits, result.k, result.precision_bits, result.digits])
    else:
        out.record({"formula": spec.id, "digits": args.digits, "k": result.k,
                    "precision_bits": result.precision_bits, "pi": result.digits})
    _report_time(out, elapsed)
    return EXIT_OK


def cmd_converge(args, out: _Out) -> int:
    spec = _formula(args.formula)
    if spec is None:
        return EXIT_UNKNOWN
    if not 0 <= args.kmax <= 10_000:
        print("radixpi: --kmax must lie in [0, 10000]", file=sys.stderr)
        return EXIT_UNKNOWN
    ctx = RealContext(args.precision)
    digits = max(1, math.floor(args.precision * math.log10(2)))
    with_limit = args.with_limit or spec.id == "eq17"
    mu = spec.mu_real(ctx)
    header = ["k", "roots", "estimate", "abs_error", "error_ratio"] + (["limit"] if with_limit else [])
    rows = []
    for rec in convergence_table(spec, args.kmax, ctx):
        row = [str(rec.k), str(spec.printed_roots(rec.k)), format_real(rec.estimate, digits),
               format_sci(rec.abs_error, 6) if rec.abs_error else "0",
               "" if rec.error_ratio is None else f"{rec.error_ratio:.10f}"]
        if with_limit:
            with ctx.scope():
                row.append(format_real(rec.estimate / mu, digits))
        rows.append(row)
    if out.fmt == "csv":
        out.row(header)
        for row in rows:
            out.row(row)
    elif out.fmt == "json-lines":
        for row in rows:
            obj = dict(zip(header, row))
            obj["k"], obj["roots"] = int(obj["k"]), int(obj["roots"])
            obj["error_ratio"] = obj["error_ratio"] or None
            out.record(obj)
    else:
        out.line(f"# {spec.id}: mu = {spec.mu_text()}, L1^2 = {spec.l1_sq_text()}, "
                 f"{args.precision} bits")
        widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
        out.line("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for row in rows:
            out.line("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    ctx = RealContext(VERIFY_PRECISION)
    groups = [
        ("exact", verify_exact_identities(include_negative_control=args.self_test_negative)),
        ("numeric", verify_numeric_identities(ctx)),
        ("figure2", verify_figure2_relations(ctx)),
    ]
    ok = True
    if out.fmt == "csv":
        out.row(["group", "name", "passed", "anchor", "detail"])
    for group, results in groups:
        for r in results:
            ok &= r.passed
            if out.fmt == "csv":
                out.row([group, r.name, "yes" if r.passed else "no", r.anchor, r.detail])
            elif out.fmt == "json-lines":
                out.record({"group": group, "name": r.name, "passed": r.passed,
                            "anchor": r.anchor, "detail": r.detail})
            else:
                out.line(f"{'PASS' if r.passed else 'FAIL'}  [{group}] {r.name}  ({r.anchor}; {r.detail})")
    if out.fmt == "plain":
        out.line("all identities hold" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_series(args, out: _Out) -> int:
    ctx = RealContext(bits_for_digits(args.digits) + 64)
    value = series_value(args.which, args.terms, ctx)
    target = series_target(args.which, ctx)
    with ctx.scope():
        deviation = abs(value - target)
    verdict = "yes" if deviation <= MATCH_THRESHOLD else "no"
    fields = {"series": args.which, "terms": args.terms,
              "value": format_real(value, args.digits),
              "target": SERIES_TARGETS[args.which],
              "target_value": format_real(target, args.digits),
              "deviation": format_sci(deviation, 6) if deviation else "0",
              "matches-target": verdict}
    if out.fmt == "csv":
        out.row(list(fields))
        out.row(list(fields.values()))
    elif out.fmt == "json-lines":
        out.record(fields)
    else:
        for key, val in fields.items():
            out.line(f"{key}: {val}")
    return EXIT_OK


def cmd_construct(args, out: _Out) -> int:
    ctx = RealContext(args.precision)
    trace = CONSTRUCTIONS[args.which](ctx)
    area = trace.measurements["area"]
    err = trace.measurements["area_error"]
    claim = "yes" if err < CLAIMED_ERROR else "no"
    if args.emit:
        try:
            with open(args.emit, "w", encoding="utf-8") as fh:
                fh.write(trace.to_svg())
        except OSError as exc:
            print(f"radixpi: cannot write diagram: {exc}", file=sys.stderr)
            return EXIT_IO
    digits = 30
    if out.fmt == "csv":
        out.row(["quantity", "value"])
        for key, val in trace.measurements.items():
            out.row([key, format_real(val, digits)])
        out.row(["claim-err-lt-5e-5", claim])
    elif out.fmt == "json-lines":
        for step in trace.steps:
            out.record({"step": step.index, "op": step.op, "inputs": list(step.inputs),
                        "outputs": list(step.outputs), "coords": step.coords})
        summary = {k: format_real(v, digits) for k, v in trace.measurements.items()}
        summary["claim-err-lt-5e-5"] = claim
        out.record(summary)
    else:
        out.stream.write(trace.serialize())
        out.line(f"area: {format_real(area, digits)}")
        out.line(f"|area - pi|: {format_sci(err, 6)}")
        out.line(f"claim-err-lt-5e-5: {claim}")
        if args.emit:
            out.line(f"diagram: {args.emit}")
    return EXIT_OK


def cmd_list(args, out: _Out) -> int:
    out.stream.write(export_registry())
    return EXIT_OK


def cmd_compat(args, out: _Out) -> int:
    entries = compatibility_report(RealContext(256), terms=args.terms)
    for e in entries:
        if out.fmt == "csv":
            out.row([e.topic, "yes" if e.matches_printed else "no", e.detail])
        elif out.fmt == "json-lines":
            out.record({"topic": e.topic, "matches_printed": e.matches_printed, "detail": e.detail})
        else:
            out.line(f"{e.topic}: {'matches printed form' if e.matches_printed else 'differs from printed form'}")
            out.line(f"    {e.detail}")
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _precision(floor: int):
    def parse(text: str) -> int:
        value = int(text)
        if value < floor:
            raise argparse.ArgumentTypeError(f"precision must be at least {floor} bits")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain")

    parser = argparse.ArgumentParser(prog="radixpi", description="Nested-radical pi formulas from chord doubling.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="pi to a number of significant digits")
    p.add_argument("--formula", required=True)
    p.add_argument("--digits", type=_positive, required=True)
    p.add_argument("--max-digits", type=_positive, default=None,
                   help="digit cap (default $RADIXPI_MAX_DIGITS or 20000)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("converge", parents=[common], help="convergence table for one formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--kmax", type=int, default=20)
    p.add_argument("--precision", type=_precision(16), default=256)
    p.add_argument("--with-limit", action="store_true", help="add the estimate/mu column")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", parents=[common], help="exact, numeric and figure identities")
    p.add_argument("--self-test-negative", action="store_true",
                   help="include a deliberately false identity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("series", parents=[common], help="partial sums of the two quoted series")
    p.add_argument("which", choices=sorted(SERIES_TARGETS))
    p.add_argument("--terms", type=_positive, default=30)
    p.add_argument("--digits", type=_positive, default=30)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("construct", parents=[common], help="run a squaring construction")
    p.add_argument("which", choices=sorted(CONSTRUCTIONS))
    p.add_argument("--precision", type=_precision(128), default=128)
    p.add_argument("--emit", metavar="PATH", help="write an SVG diagram")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("list", parents=[common], help="formula catalog")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("compat", parents=[common], help="printed forms versus evaluated values")
    p.add_argument("--terms", type=_positive, default=60)
    p.set_defaults(func=cmd_compat)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(args.format, stdout or sys.stdout)
    return args.func(args, out)


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Invoke the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
