"""One-off scan of series and asymptotic accuracy against quadrature.

Produces the two tables ``choose_method`` relies on:

* ``series_zmax[kind.nuN]``: the largest grid z at which the series was
  accepted and met the tolerance, maximised over the fixed-parameter grid
  (it only pre-filters; the trial evaluation still decides);
* ``asym_c[kind]``: the smallest constant c with |asym/oracle - 1| ≤
  c · error_scale over the asymptotic grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .asymptotic import error_scale
from .config import Config
from .dispatch import run_asymptotic, run_series
from .errors import ThermoFnError
from .quadrature import IntegralParams, Kind, oracle_eval

SERIES_GRID = tuple(float(f"{v:.4g}") for v in np.geomspace(0.5, 200, 41))
ASYM_GRID = (10.0, 20.0, 40.0, 80.0, 160.0)
NUS = (0, 1, 2)

# fixed parameters per kind (kept inside each asymptotic's validity domain)
FIXED = {
    Kind.I1: ({},),
    Kind.I2: ({"d": 1.0}, {"d": 5.0}, {"d": 10.0}),
    Kind.I3: ({"t": 0.1}, {"t": 1.0}),
    Kind.I4: ({"b": 0.1, "delta": 0.25}, {"b": 0.5, "delta": 0.25}, {"b": 0.1, "delta": 0.4}),
}


@dataclass(frozen=True)
class CalibrationRow:
    kind: str
    nu: int
    fixed: str
    z: float
    series_error: float
    series_accepted: bool
    asym_error: float


def _accepted(s, tol: float, cfg: Config) -> bool:
    return (s.diagnostics.digits_left >= cfg.series_min_digits and s.rel_error <= tol
            and s.diagnostics.converged)


def _rel(a: float, b: float) -> float:
    return abs(a / b - 1)


def calibrate(config: Config | None = None, tol: float | None = None,
              series_grid=SERIES_GRID, asym_grid=ASYM_GRID, kinds=tuple(Kind),
              nus=NUS) -> tuple[Config, list[CalibrationRow]]:
    cfg = config or Config()
    tol = cfg.auto_tol if tol is None else tol
    qtol = max(min(cfg.oracle_tol, 1e-12), 1e-14)
    zmax = dict(cfg.series_zmax)
    asym_c = dict(cfg.asym_c)
    rows = []
    # series crossover: no pre-filter during the scan
    scan_cfg = replace(cfg, series_zmax={})
    for kind in kinds:
        worst_c = 0.0
        for nu in nus:
            best_z = 0.0
            for fixed in FIXED[kind]:
                label = ",".join(f"{k}={v:g}" for k, v in fixed.items())
                last_ok = 0.0
                for z in series_grid:
                    p = IntegralParams(kind, z, nu, **fixed)
                    ref = oracle_eval(p, qtol).value
                    try:
                        s = run_series(p, scan_cfg)
                        err = _rel(s.value, ref)
                        ok = _accepted(s, tol, cfg) and err <= tol
                    except ThermoFnError:
                        err, ok = math.inf, False
                    rows.append(CalibrationRow(kind.value, nu, label, z, err, ok, math.nan))
                    if not ok:
                        break
                    last_ok = z
                best_z = max(best_z, last_ok)
                for z in asym_grid:
                    p = IntegralParams(kind, z, nu, **fixed)
                    scale = error_scale(kind.value, z, nu, p.d, p.t, p.b, p.delta)
                    if not math.isfinite(scale):
                        continue
                    err = _rel(run_asymptotic(p), oracle_eval(p, qtol).value)
                    rows.append(CalibrationRow(kind.value, nu, label, z, math.nan, False, err))
                    worst_c = max(worst_c, err / scale)
            zmax[f"{kind.value}.nu{nu}"] = best_z
        # two significant digits, rounded up
        if worst_c > 0:
            mag = 10 ** math.floor(math.log10(worst_c) - 1)
            asym_c[kind.value] = float(f"{math.ceil(worst_c / mag) * mag:.2g}")
    return replace(cfg, series_zmax=zmax, asym_c=asym_c), rows
