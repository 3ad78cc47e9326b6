"""fpzeta command line.

    fpzeta compute --n 1,2,3 --method subtracted --tol 1e-12
    fpzeta compare --n 1 --methods all
    fpzeta convergence --n 2 --methods deriv,hurwitz
    fpzeta identities --n 1,2,3

Exit codes: 0 ok, 1 usage, 2 tolerance not reached, 3 identity or
cross-method failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from . import __version__
from .errors import DomainError, ToleranceNotReached
from .exact_core import IDENTITY_LABELS, bernoulli, check_appendix_identities
from .zeta_prime import Route, relation_residual, zeta_prime_odd
from .zeta_reps import MethodId, zeta_odd

EXIT_OK, EXIT_USAGE, EXIT_TOLERANCE, EXIT_IDENTITY = 0, 1, 2, 3

ZETA_METHODS = [m.value for m in MethodId]
PRIME_METHODS = ["prime_" + r.value for r in Route]
ALIASES = {
    "all": ZETA_METHODS,
    "prime_all": PRIME_METHODS,
}
IDENTITY_K_MAX = 50
RESIDUAL_LIMIT = 1e-9
COMPARE_FACTOR = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for tolerance failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunSpec:
    command: str
    n_list: tuple[int, ...]
    methods: tuple[str, ...]
    prec: int
    tol: float | None
    b: float
    output_format: str
    inject_fault: str | None = None

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "n": list(self.n_list),
            "methods": list(self.methods),
            "prec": self.prec,
            "tol": None if self.tol is None else repr(self.tol),
            "b": repr(self.b),
            "format": self.output_format,
        }


def _parse_n(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise UsageError(f"--n expects comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise UsageError(f"--n needs positive integers, got {text!r}")
    return values


def _parse_methods(text: str) -> tuple[str, ...]:
    out = []
    for part in text.split(","):
        part = part.strip().lower()
        if not part:
            continue
        if part in ALIASES:
            out.extend(ALIASES[part])
        elif part in ZETA_METHODS or part in PRIME_METHODS:
            out.append(part)
        else:
            choices = ", ".join(ZETA_METHODS + PRIME_METHODS + list(ALIASES))
            raise UsageError(f"unknown method {part!r}; choose from {choices}")
    if not out:
        raise UsageError("no methods given")
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpzeta", description="zeta(2n+1) and zeta'(2n+1) from finite-part integrals")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in [
        ("compute", "evaluate each (n, method) cell"),
        ("compare", "pairwise differences between methods"),
        ("convergence", "evaluations and time against tolerance"),
        ("identities", "exact Bernoulli identities and the zeta' relation"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", default=None, help="comma-separated positive integers")
        p.add_argument("--method", "--methods", dest="methods", default=None,
                       help="comma-separated ids, 'all' or 'prime_all'")
        p.add_argument("--tol", type=float, default=None, help="absolute tolerance on the result")
        p.add_argument("--prec", type=int, default=15, help="significant digits, 10..200")
        p.add_argument("--b", type=float, default=1.0, help="split point for b_split, 0 < b < pi")
        p.add_argument("--format", dest="output_format", choices=["json", "csv", "table"], default=None)
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--inject-fault", default=None, choices=["bernoulli", "zeta_prime"],
                       help=argparse.SUPPRESS)
    return parser


def make_spec(args) -> RunSpec:
    command = args.command
    if args.n is None:
        if command != "identities":
            raise UsageError("--n is required")
        n_list = (1, 2, 3)
    else:
        n_list = _parse_n(args.n)
    default_methods = {"compute": "oracle", "compare": "all", "convergence": "all", "identities": "oracle"}
    methods = _parse_methods(args.methods or default_methods[command])
    if not 10 <= args.prec <= 200:
        raise UsageError(f"--prec must lie in [10, 200], got {args.prec}")
    if args.tol is not None and not (args.tol > 0 and math.isfinite(args.tol)):
        raise UsageError(f"--tol must be a positive number, got {args.tol}")
    if not 0 < args.b < math.pi:
        raise UsageError(f"b must lie in (0, π), got {args.b}")
    if command == "compare":
        if len(methods) < 2:
            raise UsageError("compare needs at least two methods")
        kinds = {m.startswith("prime_") for m in methods}
        if len(kinds) > 1:
            raise UsageError("compare cannot mix zeta methods with prime_ routes")
    fmt = args.output_format or ("csv" if command == "convergence" else "json")
    return RunSpec(command, n_list, methods, args.prec, args.tol, args.b, fmt, args.inject_fault)


# -- evaluation ---------------------------------------------------------------


def _num(x, digits: int) -> str:
    return mp.nstr(x, digits, strip_zeros=False)


def _evaluate(n: int, method: str, spec: RunSpec, tol=None):
    tol = spec.tol if tol is None else tol
    start = time.perf_counter()
    if method.startswith("prime_"):
        r = zeta_prime_odd(n, Route(method[len("prime_"):]), spec.prec, tol)
    else:
        r = zeta_odd(n, MethodId(method), spec.prec, tol, b=spec.b)
    return r.value, r.error_estimate, r.evaluations, time.perf_counter() - start


def _cell(n, method, spec, failures, tol=None):
    try:
        return _evaluate(n, method, spec, tol)
    except ToleranceNotReached as exc:
        failures.append({"n": n, "method": method, "kind": "tolerance", "message": str(exc)})
        return None


def cmd_compute(spec: RunSpec):
    records, failures = [], []
    for n in spec.n_list:
        for method in spec.methods:
            got = _cell(n, method, spec, failures)
            if got is None:
                continue
            value, err, evals, wall = got
            records.append({
                "n": n,
                "method": method,
                "value": _num(value, spec.prec),
                "error_estimate": _num(err, 3),
                "evaluations": evals,
                "wall_time_ms": round(wall * 1000, 3),
            })
    code = EXIT_TOLERANCE if failures else EXIT_OK
    return records, failures, code


def cmd_compare(spec: RunSpec):
    records, failures = [], []
    for n in spec.n_list:
        results = {}
        for method in dict.fromkeys(spec.methods):
            results[method] = _cell(n, method, spec, failures)
        for i, a in enumerate(spec.methods):
            for b in spec.methods[i + 1 :]:
                ra, rb = results[a], results[b]
                if ra is None or rb is None:
                    continue
                with mp.workdps(spec.prec + 10):
                    diff = abs(ra[0] - rb[0])
                    limit = COMPARE_FACTOR * max(ra[1], rb[1])
                status = "PASS" if diff <= limit else "FAIL"
                records.append({
                    "n": n,
                    "method_a": a,
                    "method_b": b,
                    "abs_diff": _num(diff, 3),
                    "threshold": _num(limit, 3),
                    "status": status,
                    "evaluations_a": ra[2],
                    "evaluations_b": rb[2],
                })
                if status == "FAIL":
                    failures.append({"n": n, "method": f"{a}~{b}", "kind": "disagreement",
                                     "message": f"|diff| {_num(diff, 3)} > {_num(limit, 3)}"})
    if any(f["kind"] == "tolerance" for f in failures):
        code = EXIT_TOLERANCE
    elif failures:
        code = EXIT_IDENTITY
    else:
        code = EXIT_OK
    return records, failures, code


def _sweep(finest: float) -> list[float]:
    tols = [10.0**-e for e in range(6, 13)]
    if finest < tols[-1]:
        tols += [10.0**-e for e in range(13, math.ceil(-math.log10(finest)) + 1)]
    return [t for t in tols if t >= finest * (1 - 1e-9)] or [finest]


def cmd_convergence(spec: RunSpec):
    records, failures = [], []
    for n in spec.n_list:
        for method in spec.methods:
            for tol in _sweep(spec.tol or 1e-12):
                got = _cell(n, method, spec, failures, tol)
                if got is None:
                    continue
                value, err, evals, wall = got
                records.append({
                    "n": n,
                    "method": method,
                    "tolerance": f"{tol:.0e}",
                    "evaluations": evals,
                    "wall_time_ms": round(wall * 1000, 3),
                    "value": _num(value, spec.prec),
                    "error_estimate": _num(err, 3),
                })
    code = EXIT_TOLERANCE if failures else EXIT_OK
    return records, failures, code


def _corrupted_bernoulli(k: int) -> Fraction:
    b = bernoulli(k)
    return b * Fraction(1001, 1000) if k == 10 else b


def cmd_identities(spec: RunSpec):
    records, failures = [], []
    bern = _corrupted_bernoulli if spec.inject_fault == "bernoulli" else bernoulli
    report = check_appendix_identities(IDENTITY_K_MAX, bern)
    for key, label in IDENTITY_LABELS.items():
        name = f"({key}) {label}"
        bad = [k for lab, k, ok in report.checks if lab == key and not ok]
        records.append({"item": name, "n": "", "value": f"k<={IDENTITY_K_MAX}",
                        "status": "FAIL" if bad else "PASS"})
        if bad:
            failures.append({"n": "", "method": name, "kind": "identity",
                             "message": f"fails at k={bad[0]}"})
    shift = 1e-6 if spec.inject_fault == "zeta_prime" else 0
    for n in spec.n_list:
        r = relation_residual(n, spec.prec, zeta_prime_shift=shift)
        ok = r < RESIDUAL_LIMIT
        records.append({"item": "relation_residual", "n": n, "value": _num(r, 3),
                        "status": "PASS" if ok else "FAIL"})
        if not ok:
            failures.append({"n": n, "method": "relation_residual", "kind": "identity",
                             "message": f"residual {_num(r, 3)} >= {RESIDUAL_LIMIT:g}"})
    return records, failures, EXIT_IDENTITY if failures else EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "compare": cmd_compare,
    "convergence": cmd_convergence,
    "identities": cmd_identities,
}


# -- output -------------------------------------------------------------------


def _columns(records) -> list[str]:
    cols: list[str] = []
    for r in records:
        for key in r:
            if key not in cols:
                cols.append(key)
    return cols


def render(spec: RunSpec, records, failures) -> str:
    if spec.output_format == "json":
        doc = {"spec": spec.as_dict(), "records": records, "failures": failures}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    cols = _columns(records)
    if spec.output_format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\r\n", restval="")
        writer.writeheader()
        writer.writerows(records)
        return buf.getvalue()
    rows = [cols] + [[str(r.get(c, "")) for c in cols] for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(len(cols))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    for f in failures:
        lines.append(f"{f['kind'].upper()}: n={f['n']} {f['method']}: {f['message']}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and flag errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        spec = make_spec(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fpzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        records, failures, code = COMMANDS[spec.command](spec)
    except (DomainError, ValueError) as exc:
        print(f"fpzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(spec, records, failures)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for f in failures:
        print(f"fpzeta: {f['kind']} failure: n={f['n']} {f['method']}: {f['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
