"""``thermofn`` command line: eval, sweep, calibrate, rate.

Exit codes: 0 success, 2 usage or parameter error, 3 numerical failure.
CSV cells carry 17 significant digits; unavailable values are empty.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .calibration import calibrate
from .config import load_config, write_config
from .dispatch import evaluate
from .errors import DomainError, ThermoFnError
from .quadrature import IntegralParams, Kind
from .rates import ReactionSpec, assemble_rate
from .series import Trust

EXIT_USAGE = 2
EXIT_NUMERIC = 3
METHODS = ("series", "asymptotic", "quadrature", "auto")


class UsageError(Exception):
    pass


def fmt(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return "%.17g" % v


def _add_integral_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--integral", required=True, choices=[k.value for k in Kind])
    p.add_argument("--z", type=float)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--d", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--config")


def _params(args, **override) -> IntegralParams:
    vals = {k: getattr(args, k) for k in ("z", "nu", "d", "t", "b", "delta")}
    vals.update(override)
    if vals["z"] is None:
        raise UsageError("--z is required")
    return IntegralParams(Kind(args.integral), **vals)


# ---------------------------------------------------------------- eval


def cmd_eval(args, out) -> int:
    cfg = load_config(args.config)
    r = evaluate(_params(args), args.method, args.tol, cfg)
    lines = [f"value = {fmt(r.value)}", f"method = {r.method.value}",
             f"estimated_error = {r.estimated_error:.3g}"]
    if r.reason:
        lines.append(f"reason = {r.reason}")
    if r.diagnostics is not None:
        d = r.diagnostics
        lines += [f"trust = {r.trust.value}", f"terms_used = {d.terms_used}",
                  f"cancellation_digits = {d.cancellation_digits:.2f}",
                  f"converged = {str(d.converged).lower()}"]
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return 0


# ---------------------------------------------------------------- sweep


@dataclass(frozen=True)
class SweepSpec:
    kind: Kind
    fixed: dict
    variable: str
    lo: float
    hi: float
    points: int
    spacing: str
    methods: tuple

    def __post_init__(self):
        if not self.lo < self.hi:
            raise UsageError("sweep needs min < max")
        if self.points < 2:
            raise UsageError("sweep needs at least 2 points")
        if not self.methods:
            raise UsageError("select at least one method")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise UsageError(f"unknown methods {bad}")
        if self.spacing == "log" and self.lo <= 0:
            raise UsageError("log spacing needs min > 0")
        if self.variable not in ("z", "d", "t", "b", "nu", "delta"):
            raise UsageError(f"cannot sweep {self.variable!r}")

    def values(self) -> list[float]:
        if self.spacing == "log":
            return [float(v) for v in np.geomspace(self.lo, self.hi, self.points)]
        return [float(v) for v in np.linspace(self.lo, self.hi, self.points)]

    def header(self) -> list[str]:
        cols = [self.variable]
        for m in self.methods:
            cols += [f"{m}_value", f"{m}_error"]
            if m == "series":
                cols.append("series_trust")
            if m == "auto":
                cols += ["auto_method", "auto_reason"]
        for i, a in enumerate(self.methods):
            for b in self.methods[i + 1:]:
                cols.append(f"dev_{a}_{b}")
        return cols


def sweep_row(spec: SweepSpec, x: float, tol, cfg) -> list[str]:
    vals = dict(spec.fixed)
    vals[spec.variable] = x
    row = [fmt(x)]
    values = {}
    try:
        params = IntegralParams(spec.kind, **vals)
    except DomainError:
        params = None
    for m in spec.methods:
        r = None
        if params is not None:
            try:
                r = evaluate(params, m, tol, cfg)
            except (ThermoFnError, OverflowError, ZeroDivisionError):
                r = None
        if m == "series":
            if r is None:
                row += ["", "", "failed"]
            elif r.trust is Trust.UNTRUSTED:
                row += ["", "", r.trust.value]
            else:
                row += [fmt(r.value), fmt(r.estimated_error), r.trust.value]
                values[m] = r.value
            continue
        if r is None or not math.isfinite(r.value):
            row += ["", ""]
        else:
            row += [fmt(r.value), fmt(r.estimated_error)]
            values[m] = r.value
        if m == "auto":
            row += [r.method.value, r.reason] if r is not None else ["", "failed"]
    for i, a in enumerate(spec.methods):
        for b in spec.methods[i + 1:]:
            if a in values and b in values and values[b] != 0:
                row.append(fmt(abs(values[a] / values[b] - 1)))
            else:
                row.append("")
    return row


def run_sweep(spec: SweepSpec, tol=None, cfg=None, jobs: int = 1) -> str:
    cfg = cfg or load_config()
    xs = spec.values()
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            rows = list(pool.map(lambda x: sweep_row(spec, x, tol, cfg), xs))
    else:
        rows = [sweep_row(spec, x, tol, cfg) for x in xs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(spec.header())
    w.writerows(rows)
    return buf.getvalue()


def cmd_sweep(args, out) -> int:
    cfg = load_config(args.config)
    fixed = {k: getattr(args, k) for k in ("z", "nu", "d", "t", "b", "delta")
             if getattr(args, k) is not None and k != args.vary}
    spec = SweepSpec(Kind(args.integral), fixed, args.vary, args.min, args.max, args.points,
                     args.spacing, tuple(m.strip() for m in args.methods.split(",") if m.strip()))
    text = run_sweep(spec, args.tol, cfg, args.jobs)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return 0


# ---------------------------------------------------------------- calibrate


def cmd_calibrate(args, out) -> int:
    cfg = load_config(args.config)
    new, rows = calibrate(cfg, args.tol)
    if args.output:
        write_config(new, args.output)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["kind", "nu", "fixed", "z", "series_error", "series_accepted", "asym_error"])
            for r in rows:
                w.writerow([r.kind, r.nu, r.fixed, fmt(r.z), fmt(r.series_error),
                            int(r.series_accepted), fmt(r.asym_error)])
    for k in sorted(new.series_zmax):
        print(f"series_zmax.{k} = {new.series_zmax[k]!r}", file=out)
    for k in sorted(new.asym_c):
        print(f"asym_c.{k} = {new.asym_c[k]!r}", file=out)
    return 0


# ---------------------------------------------------------------- rate


_SPEC_KEYS = {"Z1": int, "Z2": int, "mu": float, "T": float, "S0": float, "S1": float,
              "S2": float, "screening_length": float, "screening_t": float, "cutoff_d": float,
              "b": float, "delta": float}


def _read_spec_file(path: str) -> dict:
    vals = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = (s.strip() for s in line.partition("="))
        if not sep or key not in _SPEC_KEYS:
            raise UsageError(f"{path}:{lineno}: expected one of {sorted(_SPEC_KEYS)} = value")
        vals[key] = _SPEC_KEYS[key](float(raw)) if _SPEC_KEYS[key] is int else float(raw)
    return vals


def _reaction(args) -> ReactionSpec:
    vals = _read_spec_file(args.spec) if args.spec else {}
    for key in _SPEC_KEYS:
        v = getattr(args, key)
        if v is not None:
            vals[key] = v
    missing = [k for k in ("Z1", "Z2", "mu", "T", "S0") if k not in vals]
    if missing:
        raise UsageError(f"missing reaction inputs: {', '.join(missing)}")
    b, delta = vals.pop("b", None), vals.pop("delta", None)
    if (b is None) != (delta is None):
        raise UsageError("depletion needs both --b and --delta")
    if b is not None:
        vals["depletion"] = (b, delta)
    return ReactionSpec(**vals)


def cmd_rate(args, out) -> int:
    cfg = load_config(args.config)
    spec = _reaction(args)
    tol = cfg.auto_tol if args.tol is None else args.tol
    if args.T_grid:
        try:
            lo, hi, n = args.T_grid.split(",")
            temps = np.geomspace(float(lo), float(hi), int(n))
        except ValueError as exc:
            raise UsageError("--T-grid expects min,max,points") from exc
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["T", "sigma_v", "z", "t", "term_S0", "term_S1", "term_S2", "methods"])
        for T in temps:
            r = assemble_rate(replace(spec, T=float(T)), tol, cfg, args.method)
            w.writerow([fmt(float(T)), fmt(r.sigma_v), fmt(r.z_used), fmt(r.t_used),
                        *map(fmt, r.per_term), ";".join(r.methods)])
        if args.output:
            Path(args.output).write_text(buf.getvalue())
        else:
            out.write(buf.getvalue())
        return 0
    r = assemble_rate(spec, tol, cfg, args.method)
    print(f"sigma_v = {fmt(r.sigma_v)}", file=out)
    print(f"z = {fmt(r.z_used)}", file=out)
    print(f"t = {fmt(r.t_used)}", file=out)
    for name, v, m in zip(("S0", "S1", "S2"), r.per_term, r.methods):
        print(f"term_{name} = {fmt(v)}" + (f"  [{m}]" if m else ""), file=out)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thermofn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one integral")
    _add_integral_args(p)
    p.add_argument("--method", default="auto", choices=METHODS)
    p.add_argument("--output")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="tabulate methods over a parameter range")
    _add_integral_args(p)
    p.add_argument("--vary", default="z", choices=["z", "d", "t", "b", "nu", "delta"])
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--spacing", choices=["linear", "log"], default="log")
    p.add_argument("--methods", default="series,asymptotic,quadrature,auto")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("calibrate", help="fit crossover constants against quadrature")
    p.add_argument("--tol", type=float)
    p.add_argument("--output", help="write the calibrated config here")
    p.add_argument("--report", help="CSV of every calibration point")
    p.add_argument("--config")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("rate", help="Maxwellian-averaged reaction rate")
    p.add_argument("--spec", help="key = value file with reaction inputs")
    p.add_argument("--Z1", type=int)
    p.add_argument("--Z2", type=int)
    p.add_argument("--mu", type=float, help="reduced mass in amu")
    p.add_argument("--T", type=float, help="temperature in K")
    p.add_argument("--S0", type=float, help="S(0) in keV barn")
    p.add_argument("--S1", type=float, help="S'(0) in barn")
    p.add_argument("--S2", type=float, help="S''(0) in barn/keV")
    p.add_argument("--screening-length", dest="screening_length", type=float)
    p.add_argument("--screening-t", dest="screening_t", type=float)
    p.add_argument("--cutoff-d", dest="cutoff_d", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--method", default="auto", choices=METHODS)
    p.add_argument("--tol", type=float)
    p.add_argument("--T-grid", dest="T_grid", help="min,max,points (log spaced)")
    p.add_argument("--output")
    p.add_argument("--config")
    p.set_defaults(func=cmd_rate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, DomainError, ValueError, OSError) as exc:
        print(f"thermofn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ThermoFnError, ArithmeticError) as exc:
        print(f"thermofn: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
