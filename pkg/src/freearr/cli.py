"""Command-line entry point: ``freearr analyze|sweep|plot|verify``.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence

from .arrangement import load, normalize_form
from .chambers import plot_svg
from .exactmath import as_rational, var_names
from .freeness import DEFAULT_BUDGET, CertificateError, certificate_failure, load_certificate
from .report import FAMILIES, analyze, analyze_family, build_family, dumps_report

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

# flags whose values may legitimately start with '-'
_VALUE_FLAGS = ("--alpha", "--alphas", "--infinity")


class InputError(Exception):
    pass


def _glue_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--alpha -1/2`` as ``--alpha=-1/2`` so argparse keeps the value."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def parse_alpha(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        hint = " (decimals are rejected; write e.g. 1/2)" if "." in str(text) else ""
        raise InputError(f"alpha {text!r} is not an exact rational{hint}: {exc}") from None


def parse_alphas(text: str) -> List[Fraction]:
    """Comma-separated rationals, or an inclusive range ``start:stop:step``."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InputError("range must look like start:stop:step")
        start, stop, step = (parse_alpha(p) for p in parts)
        if step <= 0:
            raise InputError("range step must be positive")
        vals, v = [], start
        while v <= stop:
            vals.append(v)
            v += step
    else:
        vals = [parse_alpha(p) for p in text.split(",") if p.strip()]
    if not vals:
        raise InputError("empty alpha list")
    return sorted(set(vals))


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([a-z]\d*)")


def parse_form(text: str, dim: int):
    """A hyperplane given as a variable name, an expression like ``x-2y``, or
    a comma-separated coefficient vector."""
    names = var_names(dim)
    text = text.strip()
    if "," in text:
        vals = [parse_alpha(t) for t in text.split(",")]
        if len(vals) != dim:
            raise InputError(f"form {text!r} needs {dim} coefficients")
        return normalize_form(vals)
    coeffs = [Fraction(0)] * dim
    pos = 0
    compact = text.replace(" ", "")
    for m in _TERM.finditer(compact):
        if m.start() != pos:
            break
        sign, num, name = m.groups()
        if name not in names:
            raise InputError(f"unknown variable {name!r} in form {text!r}")
        c = Fraction(num) if num else Fraction(1)
        coeffs[names.index(name)] += -c if sign == "-" else c
        pos = m.end()
    if pos != len(compact) or not any(coeffs):
        raise InputError(f"cannot parse form {text!r}")
    return normalize_form(coeffs)


def _target(args) -> tuple:
    """(arrangement, source, family alpha or None) from --family/--alpha or --file."""
    if args.file:
        if args.family:
            raise InputError("give either --family or --file, not both")
        try:
            a = load(args.file)
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from None
        except ValueError as exc:
            raise InputError(f"{args.file}: {exc}") from None
        return a, {"file": args.file}, None
    if not args.family:
        raise InputError("need --family or --file")
    alpha = None if args.alpha is None else parse_alpha(args.alpha)
    try:
        a = build_family(args.family, alpha)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return a, {"family": args.family, "alpha": None if alpha is None else str(alpha)}, alpha


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    a, source, alpha = _target(args)
    if "family" in source:
        report, cert = analyze_family(args.family, alpha, budget=args.budget, timing=args.timing)
    else:
        report, cert = analyze(a, source, budget=args.budget, timing=args.timing)
    if args.cert:
        if cert is None:
            print("no certificate produced (verdict unknown)", file=sys.stderr)
        else:
            _write(cert.to_json(), args.cert)
    _write(dumps_report(report), args.out)
    return EXIT_OK


def _sweep_row(job):
    family, alpha, budget = job
    try:
        report, _ = analyze_family(family, alpha, budget=budget)
    except AssertionError as exc:
        return {"alpha": str(alpha), "failed": f"internal: {exc}"}
    except ValueError as exc:
        return {"alpha": str(alpha), "failed": str(exc)}
    return {
        "alpha": str(alpha),
        "size": report["arrangement"]["size"],
        "status": report["freeness"]["status"],
        "exponents": report["freeness"]["exponents"],
        "certificate": report["freeness"]["certificate_kind"],
        "chi": report["lattice"]["chi_text"],
        "chambers": report["lattice"]["num_chambers"],
        "kpi1": report["kpi1"]["status"],
        "labeled_lattice": report["labeled_lattice"],
        "known_result": report["known_result"],
    }


def cmd_sweep(args) -> int:
    if args.family not in ("A", "B"):
        raise InputError("sweep needs --family A or B")
    if not args.alphas:
        raise InputError("sweep needs --alphas")
    alphas = parse_alphas(args.alphas)
    jobs = [(args.family, a, args.budget) for a in alphas]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    if args.json:
        _write(json.dumps({"family": args.family, "rows": rows}, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _write(_table(rows), args.out)
    return EXIT_OK


def _table(rows) -> str:
    head = ["alpha", "|A|", "freeness", "exponents", "chambers", "K(pi,1)", "lattice"]
    body = []
    for r in rows:
        if "failed" in r:
            body.append([r["alpha"], "-", "FAILED: " + r["failed"], "", "", "", ""])
            continue
        exps = "" if r["exponents"] is None else "{" + ", ".join(map(str, r["exponents"])) + "}"
        body.append([r["alpha"], str(r["size"]), r["status"], exps, str(r["chambers"]),
                     r["kpi1"], r["labeled_lattice"]])
    widths = [max(len(x[i]) for x in [head] + body) for i in range(len(head))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in [head] + body]
    return "\n".join(lines) + "\n"


def cmd_plot(args) -> int:
    a, _, _ = _target(args)
    if a.dim != 3:
        raise InputError("plot needs a rank-3 arrangement in R^3")
    if not args.infinity:
        raise InputError("plot needs --infinity")
    h = parse_form(args.infinity, a.dim)
    if h not in a:
        raise InputError(f"{h} is not a hyperplane of the arrangement")
    try:
        svg = plot_svg(a, h, size=args.size)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(svg, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.certificate}: {exc}") from None
    try:
        cert = load_certificate(text)
    except CertificateError as exc:
        raise InputError(str(exc)) from None
    failure = certificate_failure(cert)
    if failure is not None:
        print(f"certificate rejected: claim {failure} does not hold")
        return EXIT_VERIFY
    print(f"certificate ok: {cert.verdict} ({cert.kind})")
    return EXIT_OK


def _add_target(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--alpha", help="exact rational p/q (dimension for braid/boolean)")
    p.add_argument("--file", help="arrangement text file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freearr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one arrangement")
    _add_target(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--cert", help="write the freeness certificate here")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identity)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="analyze a family over many parameter values")
    p.add_argument("--family", choices=("A", "B"), required=True)
    p.add_argument("--alphas", help="comma list or start:stop:step of rationals")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="SVG drawing in a projective chart")
    _add_target(p)
    p.add_argument("--infinity", help="hyperplane sent to infinity, e.g. z or 0,0,1")
    p.add_argument("--size", type=int, default=480)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = _glue_values(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
