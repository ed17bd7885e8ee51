"""Method selection between residue series, asymptotics and quadrature."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import asymptotic as asym
from . import series
from .config import Config
from .errors import ConvergenceError, DomainError, ThermoFnError
from .quadrature import IntegralParams, Kind, oracle_eval


class Method(str, enum.Enum):
    SERIES = "series"
    ASYMPTOTIC = "asymptotic"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class MethodChoice:
    method: Method
    reason: str
    estimated_error: float

    def __post_init__(self):
        if not self.estimated_error >= 0:
            raise ValueError("estimated_error must be >= 0")


@dataclass(frozen=True)
class EvalResult:
    value: float
    method: Method
    estimated_error: float
    reason: str = ""
    trust: Optional[series.Trust] = None
    diagnostics: Optional[series.SeriesDiagnostics] = None


def _is_int(v: float) -> bool:
    return float(v).is_integer()


def run_series(params: IntegralParams, cfg: Config) -> series.SeriesResult:
    return _run_series(params, cfg.series_dps, cfg.term_cap, cfg.i4_growth_factor)


@lru_cache(maxsize=2048)
def _run_series(params: IntegralParams, dps: int, cap: int, growth: float) -> series.SeriesResult:
    k, z, nu = params.kind, params.z, params.nu
    if k is Kind.I4:
        return series.i4_series(z, params.delta, params.b, nu, dps, cap, growth)
    if not _is_int(nu):
        raise DomainError("residue series need integer nu")
    nu = int(nu)
    if k is Kind.I1:
        return series.i1_series(z, nu, dps, cap)
    if k is Kind.I2:
        return series.i2_series(z, params.d, nu, dps, cap)
    return series.i3_series(z, params.t, nu, dps, cap)


def run_asymptotic(params: IntegralParams) -> float:
    k, z, nu = params.kind, params.z, params.nu
    if k is Kind.I1:
        return asym.i1_asymptotic(z, nu)
    if k is Kind.I2:
        return asym.i2_asymptotic(z, params.d, nu)
    if k is Kind.I3:
        return asym.i3_asymptotic(z, params.t, nu)
    return asym.i4_asymptotic(z, params.delta, params.b, nu)


def asymptotic_error_estimate(params: IntegralParams, cfg: Config) -> float:
    if params.z <= 0:
        return math.inf
    k = params.kind.value
    scale = asym.error_scale(k, params.z, params.nu, params.d, params.t, params.b, params.delta)
    return cfg.asym_c[k] * scale


def quadrature_tol(tol: float, cfg: Config) -> float:
    return min(max(min(tol * 1e-2, cfg.oracle_tol), 1e-14), 1e-4)


def choose_method(params: IntegralParams, tol: float | None = None,
                  config: Config | None = None) -> MethodChoice:
    """Cheapest method expected to meet ``tol`` (relative).

    The series is tried when z is within the calibrated crossover bound;
    it is accepted if its cancellation leaves enough working digits and the
    implied roundoff meets ``tol``.  The asymptotic form is used when its
    calibrated error model meets ``tol``.  Otherwise quadrature.
    """
    cfg = config or Config()
    tol = cfg.auto_tol if tol is None else tol
    notes = []

    zmax = cfg.zmax(params.kind.value, params.nu)
    series_ok = params.kind is Kind.I4 or _is_int(params.nu)
    if not series_ok:
        notes.append("series needs integer nu")
    elif params.z > zmax:
        notes.append(f"z={params.z:g} beyond series crossover {zmax:g}")
    else:
        try:
            s = run_series(params, cfg)
        except ConvergenceError as exc:
            notes.append(f"series failed ({exc})")
        else:
            left = s.diagnostics.digits_left
            if left >= cfg.series_min_digits and s.trust is not series.Trust.UNTRUSTED \
                    and s.rel_error <= tol:
                return MethodChoice(Method.SERIES,
                                    f"series: {s.diagnostics.cancellation_digits:.1f} digits cancelled; "
                                    f"{left:.1f} left", s.rel_error)
            notes.append(f"series {s.trust.value} ({left:.1f} digits left)")

    est = asymptotic_error_estimate(params, cfg)
    if est <= tol:
        return MethodChoice(Method.ASYMPTOTIC, f"asymptotic: model error {est:.2g} <= tol", est)
    notes.append("asymptotic outside domain" if math.isinf(est) else f"asymptotic error {est:.2g} > tol")
    return MethodChoice(Method.QUADRATURE, "quadrature: " + "; ".join(notes), quadrature_tol(tol, cfg))


def evaluate(params: IntegralParams, method: str | Method = "auto", tol: float | None = None,
             config: Config | None = None) -> EvalResult:
    """Evaluate with a fixed method or with ``auto`` dispatch."""
    cfg = config or Config()
    if method == "auto":
        tol = cfg.auto_tol if tol is None else tol
        choice = choose_method(params, tol, cfg)
        method, reason = choice.method, choice.reason
        qtol = quadrature_tol(tol, cfg)
    else:
        reason = ""
        qtol = cfg.oracle_tol if tol is None else min(max(tol, 1e-14), 1e-4)
    method = Method(method)
    if method is Method.SERIES:
        s = run_series(params, cfg)
        return EvalResult(s.value, method, s.rel_error, reason, s.trust, s.diagnostics)
    if method is Method.ASYMPTOTIC:
        return EvalResult(run_asymptotic(params), method,
                          asymptotic_error_estimate(params, cfg), reason)
    q = oracle_eval(params, qtol)
    return EvalResult(q.value, method, q.abs_error_estimate / q.value, reason)


__all__ = ["Method", "MethodChoice", "EvalResult", "choose_method", "evaluate",
           "run_series", "run_asymptotic", "asymptotic_error_estimate", "ThermoFnError"]
