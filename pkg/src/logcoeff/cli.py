"""Command-line front end.

Exit codes: 0 success, 1 proven-bound violation, 2 usage error,
3 request outside the hypotheses of the closed-form bounds,
4 conjecture probe found a counterexample candidate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from . import bounds as B
from .classes import (
    ClassSpec,
    ClassSpecError,
    SchwarzError,
    extremal_series,
    member_from_schwarz,
    schwarz_from_json,
)
from .coefficients import log_coefficients
from .explorer import CONJECTURES, conjecture_report, verify_bounds
from .series import EXACT, FLOAT, BackendError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INAPPLICABLE, EXIT_FINDING = 0, 1, 2, 3, 4
KIND_ALIASES = {"sstar": "strongly_starlike", "strongly-starlike": "strongly_starlike", "f": "F", "g": "G"}


class UsageError(Exception):
    pass


def _num(s: str):
    """Parse a number, keeping rationals exact."""
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(s)
    except ValueError:
        pass
    try:
        return complex(s.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None


def _add_class_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("class")
    g.add_argument("--class", dest="kind", help="janowski | spiral | strongly_starlike | F | G")
    g.add_argument("--spec", help="class spec JSON file")
    g.add_argument("--A", type=_num)
    g.add_argument("--B", type=_num)
    g.add_argument("--alpha", type=_num)
    g.add_argument("--beta", type=_num)
    g.add_argument("--c", type=_num)
    g.add_argument("--twist", type=int, default=1)
    g.add_argument("--theta", type=float, default=0.0)


def _add_format(p: argparse.ArgumentParser, default: str = "pretty") -> None:
    p.add_argument("--format", choices=("json", "csv", "pretty"), default=default)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logcoeff", description="Logarithmic coefficients, bounds and Schwarz-function search.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="gamma_1..gamma_N of an extremal or Schwarz-driven member")
    _add_class_args(p)
    p.add_argument("--n", type=int, default=8, help="number of coefficients")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--extremal", action="store_true", help="use the extremal function (default)")
    src.add_argument("--schwarz", help='Schwarz function JSON file {"schur": [[re, im], ...]}')
    p.add_argument("--backend", choices=("auto", EXACT, FLOAT), default="auto")
    _add_format(p)

    p = sub.add_parser("verify", help="fuzz every applicable proven bound on random members")
    _add_class_args(p)
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--backend", choices=(EXACT, FLOAT), default=FLOAT)
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: LOGCOEFF_THREADS or 1)")
    _add_format(p)

    p = sub.add_parser("phi", help="closed-form bound of |c3 + mu c1 c2 + upsilon c1^3|")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--upsilon", type=float, required=True)
    _add_format(p)

    p = sub.add_parser("dilog", help="Li2(x) for -1 <= x <= 1")
    p.add_argument("--x", type=_num, required=True)
    _add_format(p)

    p = sub.add_parser("explore", help="probe a conjectured bound")
    p.add_argument("--conjecture", choices=CONJECTURES, required=True)
    p.add_argument("--budget", type=int, default=None, help="evaluation budget (default depends on the conjecture)")
    p.add_argument("--seed", type=int, default=0)
    _add_format(p, default="json")

    p = sub.add_parser("table", help="every bound formula of a class for n = 1..N")
    _add_class_args(p)
    p.add_argument("--n", type=int, default=8)
    _add_format(p, default="csv")
    return ap


def resolve_spec(args) -> ClassSpec:
    if args.spec:
        if args.kind:
            raise UsageError("give either --spec or --class, not both")
        try:
            with open(args.spec) as fh:
                return ClassSpec.from_json(fh.read())
        except OSError as e:
            raise UsageError(f"cannot read spec file: {e}") from None
        except (ValueError, TypeError) as e:
            raise UsageError(f"invalid spec file: {e}") from None
    if not args.kind:
        raise UsageError("a class is required (--class or --spec)")
    kind = KIND_ALIASES.get(args.kind, args.kind)
    params = {k: getattr(args, k) for k in ("A", "B", "alpha", "beta", "c") if getattr(args, k) is not None}
    try:
        return ClassSpec(kind, **params, twist=args.twist, theta=args.theta)
    except (ClassSpecError, TypeError) as e:
        raise UsageError(str(e)) from None


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _csv(header: dict, columns: list, rows: list[dict]) -> str:
    buf = io.StringIO()
    for k, v in header.items():
        buf.write(f"# {k}={json.dumps(v, sort_keys=True, default=_jsonable)}\n")
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, default=_jsonable)
    return str(v)


def _pretty(header: dict, columns: list, rows: list[dict]) -> str:
    lines = [f"{k}: {json.dumps(v, sort_keys=True, default=_jsonable)}" for k, v in header.items()]
    cells = [[_cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
    lines.extend("  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells)
    return "\n".join(lines) + "\n"


def _emit(fmt: str, header: dict, columns: list, rows: list[dict], extra: dict | None = None) -> str:
    if fmt == "json":
        return _dump({"config": header, "rows": rows, **(extra or {})})
    if fmt == "csv":
        return _csv(header, columns, rows)
    return _pretty(header, columns, rows)


def _fmt_num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return repr(v.real) if v.imag == 0 else repr(v)
    return repr(float(v))


def cmd_coeffs(args) -> tuple[str, int]:
    spec = resolve_spec(args)
    N = args.n
    if N < 1:
        raise UsageError("--n must be >= 1")
    backend = None if args.backend == "auto" else args.backend
    try:
        if args.schwarz:
            with open(args.schwarz) as fh:
                text = fh.read()
            sch_backend = backend
            if sch_backend is None and not spec.exact_capable:
                sch_backend = FLOAT
            phi = schwarz_from_json(text, N, sch_backend)
            if backend is None:
                backend = EXACT if (spec.exact_capable and phi.backend == EXACT) else FLOAT
            f = member_from_schwarz(spec, phi, N, backend)
            source = {"schwarz": phi.to_dict()}
        else:
            f = extremal_series(spec, N, backend)
            source = "extremal"
    except OSError as e:
        raise UsageError(f"cannot read Schwarz file: {e}") from None
    except (SchwarzError, BackendError, ValueError) as e:
        raise UsageError(str(e)) from None
    gam = log_coefficients(f, N)
    rows = []
    for n in range(1, N + 1):
        g = gam[n]
        mod = gam.abs_exact(n)
        b = B.gamma_bound(spec, n)
        margin = None
        if b.applicable and b.value is not None:
            margin = b.value - mod if isinstance(b.value, Fraction) and isinstance(mod, Fraction) else float(b.value) - float(mod)
        rows.append(
            {
                "n": n,
                "gamma": _fmt_num(g),
                "abs_gamma": _fmt_num(mod),
                "bound": _fmt_num(b.value),
                "margin": _fmt_num(margin),
                "citation": b.citation,
                "status": b.status if b.applicable else f"n/a: {b.reason}",
            }
        )
    header = {"command": "coeffs", "spec": spec.to_dict(), "N": N, "source": source, "backend": gam.backend}
    cols = ["n", "gamma", "abs_gamma", "bound", "margin", "citation", "status"]
    extra = {"gamma": gam.to_json_list()}
    return _emit(args.format, header, cols, rows, extra), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    spec = resolve_spec(args)
    if args.n < 1 or args.samples < 1:
        raise UsageError("--n and --samples must be >= 1")
    if args.backend == EXACT and not spec.exact_capable:
        raise UsageError(f"{spec.label()} cannot be verified on the exact backend")
    rep = verify_bounds(spec, args.n, args.samples, args.seed, depth=args.depth, backend=args.backend, workers=args.workers)
    header = {"command": "verify", **rep.header()}
    rows = [r.to_dict() for r in rep.rows]
    for r in rows:
        r["n_violations"] = len(r["violations"])
    code = EXIT_OK if rep.ok else EXIT_VIOLATION
    if args.format == "json":
        return _dump({"config": header, "ok": rep.ok, "rows": rows, "skipped": rep.skipped}), code
    cols = ["check", "index", "citation", "bound", "max_observed", "margin", "n_violations"]
    out = _emit(args.format, header, cols, rows)
    if args.format == "pretty":
        out += f"result: {'ok' if rep.ok else 'VIOLATIONS FOUND'} ({len(rep.violations)} violations)\n"
    return out, code


def cmd_phi(args) -> tuple[str, int]:
    header = {"command": "phi", "mu": args.mu, "upsilon": args.upsilon}
    try:
        value, region = B.ps_phi(args.mu, args.upsilon)
    except B.UncoveredRegionError as e:
        rows = [{"value": "", "region": "uncovered", "diagnostics": e.diagnostics}]
        return _emit(args.format, header, ["value", "region", "diagnostics"], rows), EXIT_INAPPLICABLE
    rows = [{"value": repr(value), "region": region}]
    return _emit(args.format, header, ["value", "region"], rows), EXIT_OK


def cmd_dilog(args) -> tuple[str, int]:
    header = {"command": "dilog", "x": args.x}
    try:
        v = B.dilog(args.x)
    except B.DomainError as e:
        raise UsageError(str(e)) from None
    return _emit(args.format, header, ["x", "li2"], [{"x": _fmt_num(args.x), "li2": repr(v)}]), EXIT_OK


def cmd_explore(args) -> tuple[str, int]:
    if args.budget is not None and args.budget < 1:
        raise UsageError("--budget must be >= 1")
    rep = conjecture_report(args.conjecture, args.budget, args.seed)
    d = rep.to_dict()
    header = {"command": "explore", **d["header"]}
    code = EXIT_FINDING if rep.findings else EXIT_OK
    if args.format == "json":
        return _dump({"config": header, "label": d["label"], "status": d["status"], "entries": d["entries"]}), code
    cols = ["class", "n", "bound", "best_found", "ratio", "violation"]
    out = _emit(args.format, header, cols, d["entries"])
    if args.format == "pretty":
        out += f"status: {d['status']} ({d['label']})\n"
    return out, code


def cmd_table(args) -> tuple[str, int]:
    spec = resolve_spec(args)
    rows = B.bound_table(spec, args.n)
    header = {"command": "table", "spec": spec.to_dict(), "N": args.n}
    return _emit(args.format, header, list(B.TABLE_COLUMNS), rows), EXIT_OK


COMMANDS = {
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
    "phi": cmd_phi,
    "dilog": cmd_dilog,
    "explore": cmd_explore,
    "table": cmd_table,
}


def run(argv=None) -> tuple[str, str, int]:
    """Run the CLI and return ``(stdout, stderr, exit_code)`` without exiting."""
    parser = build_parser()
    err = io.StringIO()
    try:
        old_err = sys.stderr
        sys.stderr = err
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old_err
    except SystemExit as e:
        return "", err.getvalue(), int(e.code or 0)
    try:
        out, code = COMMANDS[args.command](args)
    except UsageError as e:
        return "", f"{parser.prog} {args.command}: error: {e}\n", EXIT_USAGE
    return out, "", code


def main(argv=None) -> int:
    out, err, code = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
