"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 parameter-domain error (e.g.
``B <= 0``), 3 pole or divergence error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys
from fractions import Fraction

from . import analysis, exact, oracle
from .algebra import rat_str, to_rat
from .analysis import MethodSpec, Quantity
from .errors import DivergenceError, DomainError, PoleError
from .hpm import hpm_expand, partial_sums
from .model import ModelParams
from .pade import Fixture, PadeDegenerateError, paper_fixture

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_POLE = 3

_DEFAULTS = {"A": "1", "B": "1", "alpha": "1", "u": "1", "v": "1"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return to_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return x


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model parameters (exact rationals, e.g. 3/2)")
    for name in ("A", "B", "C", "Cbar", "alpha", "u", "v"):
        g.add_argument(f"--{name}", type=_rational, default=None)


def _add_output_flags(p: argparse.ArgumentParser, formats=("csv", "json"), default="csv") -> None:
    p.add_argument("-o", "--output", default="-", help="output path (default: stdout)")
    p.add_argument("--format", choices=formats, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="couette", description="Exact, HPM, Padé and RK4 solutions "
                     "for a spherical particle in plane Couette flow.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", help="sample the closed-form solution")
    _add_param_flags(p)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--dt", type=_positive_float, default=0.1)
    _add_output_flags(p)

    p = sub.add_parser("oracle", help="integrate with fixed-step RK4")
    _add_param_flags(p)
    p.add_argument("--t-max", type=_positive_float, default=10.0)
    p.add_argument("--h", type=_positive_float, default=1e-3)
    _add_output_flags(p)

    p = sub.add_parser("hpm", help="homotopy-perturbation terms, sums or series")
    _add_param_flags(p)
    p.add_argument("--orders", type=int, default=4, help="highest order N (N+1 terms)")
    p.add_argument("--emit", choices=("terms", "sums", "maclaurin"), default="terms")
    p.add_argument("--maclaurin-order", type=int, default=12)
    _add_output_flags(p, formats=("json",), default="json")

    p = sub.add_parser("pade", help="build a Padé approximant or evaluate a published one")
    _add_param_flags(p)
    p.add_argument("--fixture", choices=[f.value for f in Fixture])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--source", default="exact", help="'exact' or 'hpm:N'")
    p.add_argument("--quantity", choices=[q.value for q in Quantity], default=None)
    p.add_argument("--t-max", type=float, default=None, help="evaluate on 0..t_max")
    p.add_argument("--dt", type=_positive_float, default=0.1)
    _add_output_flags(p, default="json")

    p = sub.add_parser("compare", help="tabulate methods and errors on a time grid")
    _add_param_flags(p)
    p.add_argument("--methods", default="exact,hpm:12",
                   help="comma list: exact, hpm:N, pade:vx88, pade:vy1010, "
                        "pade:M/N:exact, pade:M/N:hpm:K, rk4:H; suffix @q picks a quantity")
    p.add_argument("--quantity", choices=[q.value for q in Quantity], default="y")
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--dt", type=_positive_float, default=0.1)
    _add_output_flags(p)

    p = sub.add_parser("divergence", help="first time the error exceeds a tolerance")
    _add_param_flags(p)
    p.add_argument("--methods", default="hpm:12", help="same syntax as compare")
    p.add_argument("--quantity", choices=[q.value for q in Quantity], default="y")
    p.add_argument("--tol", type=_positive_float, default=analysis.DEFAULT_TOL)
    p.add_argument("--t-max", type=_positive_float, default=20.0)
    p.add_argument("--dt", type=_positive_float, default=analysis.DEFAULT_DT)
    _add_output_flags(p, default="json")
    return parser


def resolve_params(args) -> tuple[ModelParams, str]:
    """Model parameters from flags, plus a note on which coupling is in effect."""
    vals = {k: getattr(args, k) if getattr(args, k) is not None else Fraction(v)
            for k, v in _DEFAULTS.items()}
    if args.Cbar is not None:
        cbar = args.Cbar
        note = f"Cbar = {cbar} (from --Cbar)"
        if args.C is not None:
            note += f"; --C {args.C} ignored"
    elif args.C is not None:
        cbar = args.C + vals["A"]
        note = f"Cbar = C + A = {args.C} + {vals['A']} = {cbar}"
    else:
        cbar = Fraction(1)
        note = "Cbar = 1 (default unit coupling)"
    return ModelParams(Cbar=cbar, **vals), note


def precision_digits() -> int:
    raw = os.environ.get("COUETTE_PRECISION_DIGITS", "17")
    try:
        digits = int(raw)
    except ValueError:
        raise UsageError(f"COUETTE_PRECISION_DIGITS must be an integer, got {raw!r}")
    if not 1 <= digits <= 40:
        raise UsageError("COUETTE_PRECISION_DIGITS must lie in 1..40")
    return digits


@contextlib.contextmanager
def _open_output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _dump_json(obj, fh) -> None:
    json.dump(obj, fh, indent=2)
    fh.write("\n")


def _write_samples(samples, method, args, params, note, digits) -> None:
    fmt = analysis.fmt_float
    with _open_output(args.output) as fh:
        if args.format == "json":
            _dump_json({
                "method": method,
                "params": params.to_json(),
                "coupling": note,
                "samples": [s._asdict() for s in samples],
            }, fh)
            return
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_HEADER)
        for s in samples:
            w.writerow([fmt(s.t, digits), method] + [fmt(v, digits) for v in s[1:]])


TRAJECTORY_HEADER = ("t", "method", "x", "y", "vx", "vy")


def _cmd_exact(args, params, note, digits):
    samples = exact.trajectory(params, analysis.time_grid(args.t_max, args.dt))
    _write_samples(samples, "exact", args, params, note, digits)


def _cmd_oracle(args, params, note, digits):
    samples = oracle.integrate(params, args.t_max, args.h)
    _write_samples(samples, "rk4", args, params, note, digits)


def _cmd_hpm(args, params, note, digits):
    if args.orders < 0:
        raise UsageError("--orders must be >= 0")
    if args.maclaurin_order < 0:
        raise UsageError("--maclaurin-order must be >= 0")
    e = hpm_expand(params, args.orders)
    out = {"params": params.to_json(), "coupling": note, "emit": args.emit}
    if args.emit == "terms":
        out["orders"] = [{"n": n, "x": x.to_json(), "y": y.to_json()}
                         for n, (x, y) in enumerate(e.orders)]
    else:
        sums = partial_sums(e)
        if args.emit == "sums":
            out["sums"] = [{"N": n, "x": x.to_json(), "y": y.to_json()}
                           for n, (x, y) in enumerate(sums)]
        else:
            out["maclaurin_order"] = args.maclaurin_order
            out["sums"] = [{"N": n,
                            "x": [rat_str(c) for c in x.maclaurin(args.maclaurin_order)],
                            "y": [rat_str(c) for c in y.maclaurin(args.maclaurin_order)]}
                           for n, (x, y) in enumerate(sums)]
    with _open_output(args.output) as fh:
        _dump_json(out, fh)


def _parse_source(text: str) -> int | None:
    if text == "exact":
        return None
    if text.startswith("hpm:") and text[4:].isdigit():
        return int(text[4:])
    raise UsageError(f"--source must be 'exact' or 'hpm:N', got {text!r}")


def _cmd_pade(args, params, note, digits):
    if args.fixture:
        if args.m is not None or args.n is not None:
            raise UsageError("--fixture cannot be combined with --m/--n")
        which = Fixture(args.fixture)
        kind = analysis.PadeFixture(which)
        quantity = analysis.FIXTURE_QUANTITY[which]
        if args.quantity and Quantity(args.quantity) is not quantity:
            raise UsageError(f"fixture {which.value} approximates {quantity.value}")
        r = paper_fixture(which)
    else:
        if args.m is None or args.n is None or args.m < 0 or args.n < 0:
            raise UsageError("give --fixture, or nonnegative --m and --n")
        quantity = Quantity(args.quantity or "vx")
        kind = analysis.PadeBuilt(args.m, args.n, _parse_source(args.source))
        r = analysis.built_pade(params, kind, quantity)
    spec = MethodSpec(kind, quantity)
    if args.t_max is not None:
        rows = analysis.sweep(params, [spec], analysis.time_grid(args.t_max, args.dt))
        _emit_rows(rows, args, params, note, digits)
        return
    if args.format == "csv":
        raise UsageError("CSV output needs --t-max (evaluation mode)")
    out = {"method": spec.label, "quantity": quantity.value, **r.to_json()}
    if r.degeneracy is not None:
        d = r.degeneracy
        out["degeneracy"] = {"requested": list(d.requested), "effective": list(d.effective),
                             "matched_order": d.matched_order, "consistent": d.consistent}
    if not args.fixture:
        out["params"] = params.to_json()
        out["coupling"] = note
    with _open_output(args.output) as fh:
        _dump_json(out, fh)


def _parse_methods(text: str, default_q: str) -> list[MethodSpec]:
    specs = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        label, _, q = item.partition("@")
        try:
            specs.append(MethodSpec(analysis.parse_method(label), Quantity(q or default_q)))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if not specs:
        raise UsageError("no methods given")
    return specs


def _emit_rows(rows, args, params, note, digits):
    with _open_output(args.output) as fh:
        if args.format == "json":
            _dump_json({"params": params.to_json(), "coupling": note,
                        "rows": analysis.rows_to_json(rows)}, fh)
        else:
            analysis.write_csv(rows, fh, digits)


def _cmd_compare(args, params, note, digits):
    specs = _parse_methods(args.methods, args.quantity)
    rows = analysis.sweep(params, specs, analysis.time_grid(args.t_max, args.dt))
    _emit_rows(rows, args, params, note, digits)


def _cmd_divergence(args, params, note, digits):
    specs = _parse_methods(args.methods, args.quantity)
    summaries = [analysis.divergence_summary(params, s, args.tol, args.t_max, args.dt)
                 for s in specs]
    with _open_output(args.output) as fh:
        if args.format == "json":
            _dump_json({"coupling": note, "results": summaries}, fh)
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("method", "quantity", "tol", "t_max", "dt", "t_star"))
            for s in summaries:
                w.writerow((s["method"], s["quantity"], repr(s["tol"]), repr(s["t_max"]),
                            repr(s["dt"]), analysis.fmt_float(s["t_star"], digits)))


_COMMANDS = {
    "exact": _cmd_exact,
    "oracle": _cmd_oracle,
    "hpm": _cmd_hpm,
    "pade": _cmd_pade,
    "compare": _cmd_compare,
    "divergence": _cmd_divergence,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        digits = precision_digits()
        params, note = resolve_params(args)
        print(f"coupling in effect: {note}", file=sys.stderr)
        _COMMANDS[args.command](args, params, note, digits)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"couette: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"couette: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (PoleError, DivergenceError, PadeDegenerateError) as exc:
        print(f"couette: {exc}", file=sys.stderr)
        return EXIT_POLE
    except ValueError as exc:
        print(f"couette: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
