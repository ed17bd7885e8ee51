"""Adaptive Gauss–Kronrod quadrature and the defining-integral oracle.

The oracle integrates the four thermonuclear integrands directly.  The
integration range is split at the interior maximum of the integrand (the
Gamow peak), the far tail is mapped onto a finite interval, and panels are
bisected globally by largest error until the requested relative accuracy
is met.
"""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, QuadratureError, StripError
from .special import gamma

# Kronrod 21-point rule on [-1, 1] (positive half, descending) and the
# embedded 10-point Gauss weights for xgk[1], xgk[3], ...
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525452164,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]

MAX_SUBDIVISIONS = 4000
DEFAULT_TOL = 1e-10


def gk21(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> tuple[float, float]:
    """One Gauss–Kronrod panel: (Kronrod estimate, |Kronrod - Gauss|)."""
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    fx = f(center + half * NODES)
    k = half * float(np.dot(KRONROD_WEIGHTS, fx))
    g = half * float(np.dot(GAUSS_WEIGHTS, fx))
    return k, abs(k - g)


def adaptive_integrate(f, breakpoints, rtol: float, atol: float = 0.0,
                       limit: int = MAX_SUBDIVISIONS) -> tuple[float, float, int]:
    """Globally adaptive GK21 over consecutive ``breakpoints``.

    Stops when the summed panel error is below ``max(atol, rtol*|I|)``.
    Returns ``(value, abs_error, panels)``.
    """
    heap = []
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        if b > a:
            k, e = gk21(f, a, b)
            heapq.heappush(heap, (-e, a, b, k))
    if not heap:
        return 0.0, 0.0, 0
    while True:
        total = math.fsum(item[3] for item in heap)
        err = math.fsum(-item[0] for item in heap)
        if err <= max(atol, rtol * abs(total)):
            return total, err, len(heap)
        if len(heap) >= limit:
            raise QuadratureError(
                f"error estimate {err:.3g} above tolerance after {len(heap)} panels")
        _, a, b, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            raise QuadratureError("panel width underflow")
        for lo, hi in ((a, mid), (mid, b)):
            k, e = gk21(f, lo, hi)
            heapq.heappush(heap, (-e, lo, hi, k))


def tail_map(f, start: float):
    """Integrand on u in [0, 1) for the substitution y = start + u/(1-u)."""
    def g(u):
        one_minus = 1.0 - u
        y = start + u / one_minus
        return f(y) / (one_minus * one_minus)
    return g


def integrate_semi_infinite(f, start: float, split: Optional[float], rtol: float,
                            atol: float = 0.0) -> tuple[float, float, int]:
    """∫_start^∞ f with an optional finite split point before the mapped tail."""
    parts = []
    tail_start = start
    if split is not None and split > start:
        parts.append(adaptive_integrate(f, [start, split], rtol, atol))
        tail_start = split
    parts.append(adaptive_integrate(tail_map(f, tail_start), [0.0, 1.0], rtol, atol))
    return (math.fsum(p[0] for p in parts), math.fsum(p[1] for p in parts),
            sum(p[2] for p in parts))

# --------------------------------------------------------------------------
# The four thermonuclear integrals


class Kind(str, enum.Enum):
    I1 = "i1"
    I2 = "i2"
    I3 = "i3"
    I4 = "i4"


@dataclass(frozen=True)
class IntegralParams:
    """One of I₁–I₄ with its dimensionless arguments.

    Fields not used by ``kind`` are ignored.
    """

    kind: Kind
    z: float
    nu: float = 0.0
    d: Optional[float] = None
    t: Optional[float] = None
    b: Optional[float] = None
    delta: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not (self.z >= 0 and math.isfinite(self.z)):
            raise DomainError(f"z must be finite and >= 0, got {self.z}")
        if not (self.nu >= 0 and math.isfinite(self.nu)):
            raise DomainError(f"nu must be finite and >= 0, got {self.nu}")
        k = self.kind
        if k is Kind.I2 and not (self.d is not None and self.d > 0 and math.isfinite(self.d)):
            raise DomainError("I2 needs a cutoff d > 0")
        if k is Kind.I3 and not (self.t is not None and self.t >= 0 and math.isfinite(self.t)):
            raise DomainError("I3 needs a screening parameter t >= 0")
        if k is Kind.I4:
            if not (self.b is not None and self.b >= 0 and math.isfinite(self.b)):
                raise DomainError("I4 needs a depletion amplitude b >= 0")
            if not (self.delta is not None and self.delta > 0 and math.isfinite(self.delta)):
                raise DomainError("I4 needs a depletion exponent delta > 0")

    def describe(self) -> str:
        extra = ""
        if self.kind is Kind.I2:
            extra = f", d={self.d:g}"
        elif self.kind is Kind.I3:
            extra = f", t={self.t:g}"
        elif self.kind is Kind.I4:
            extra = f", b={self.b:g}, delta={self.delta:g}"
        return f"{self.kind.value}(z={self.z:g}, nu={self.nu:g}{extra})"


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    subdivisions: int
    split_point: float


def gamow_peak(z: float) -> Optional[float]:
    """Maximiser (z/2)^(2/3) of exp(-y - z y^(-1/2)); None when z = 0."""
    if z < 0:
        raise DomainError("z must be non-negative")
    if z == 0:
        return None
    return (0.5 * z) ** (2.0 / 3.0)


def _log_integrand(params: IntegralParams):
    """Vectorised ln of the integrand, -inf where it underflows."""
    z, nu = params.z, params.nu
    t = params.t if params.kind is Kind.I3 else 0.0
    b = params.b if params.kind is Kind.I4 else 0.0
    delta = params.delta if params.kind is Kind.I4 else 1.0
    y_min = (z / 700.0) ** 2 if t == 0 else 0.0

    def g(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = -y
            if nu != 0:
                out = out + nu * np.log(y)
            if z != 0:
                out = out - z / np.sqrt(y + t)
            if b != 0:
                out = out - b * y ** delta
        out = np.where(y > y_min, out, -np.inf) if z != 0 and t == 0 else out
        return np.where(np.isnan(out), -np.inf, out)
    return g


def _dlog_integrand(params: IntegralParams, y: float) -> float:
    z, nu = params.z, params.nu
    t = params.t if params.kind is Kind.I3 else 0.0
    b = params.b if params.kind is Kind.I4 else 0.0
    delta = params.delta if params.kind is Kind.I4 else 1.0
    out = -1.0 + 0.5 * z * (y + t) ** -1.5
    if nu:
        out += nu / y
    if b:
        out -= b * delta * y ** (delta - 1.0)
    return out


def integrand_peak(params: IntegralParams) -> float:
    """Interior maximum of the full integrand (bisection on the log-derivative)."""
    y0 = gamow_peak(params.z)
    if params.z == 0 and params.nu == 0:
        return 1.0
    lo, hi = 1e-200, max(1.0, params.nu, y0 or 1.0)
    while _dlog_integrand(params, hi) > 0:
        hi *= 2.0
    if _dlog_integrand(params, lo) <= 0:
        return y0 or 1.0
    for _ in range(200):
        mid = math.sqrt(lo) * math.sqrt(hi) if hi / lo > 4 else 0.5 * (lo + hi)
        if _dlog_integrand(params, mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * hi:
            break
    return 0.5 * (lo + hi)


def oracle_eval(params: IntegralParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Integrate the defining integral of I₁–I₄ by adaptive quadrature."""
    if not (1e-14 <= tol <= 1e-4):
        raise ValueError("oracle tolerance must lie in [1e-14, 1e-4]")
    g = _log_integrand(params)
    peak = integrand_peak(params)
    if params.kind is Kind.I2:
        peak = min(peak, params.d)
    log_scale = float(g(np.array([peak]))[0])
    if not math.isfinite(log_scale):
        raise QuadratureError("integrand vanishes at its own peak")

    def f(y):
        with np.errstate(under="ignore", over="ignore"):
            return np.exp(g(y) - log_scale)

    # width of the peak from the curvature of the log-integrand
    h = 1e-4 * peak
    curv = (_dlog_integrand(params, peak - h) - _dlog_integrand(params, peak + h)) / (2 * h)
    width = 1.0 / math.sqrt(curv) if curv > 0 else max(peak, 1.0)

    if params.kind is Kind.I2:
        pts = [0.0, peak, params.d] if peak < params.d else [0.0, params.d]
        if peak < params.d and peak + 8 * width < params.d:
            pts = [0.0, peak, peak + 8 * width, params.d]
        value, err, n = adaptive_integrate(f, pts, tol)
    else:
        head, herr, hn = adaptive_integrate(f, [0.0, peak], tol)
        tail, terr, tn = integrate_semi_infinite(f, peak, peak + 8 * width, tol)
        value, err, n = head + tail, herr + terr, hn + tn
    scale = math.exp(log_scale)
    value *= scale
    err *= scale
    if not (value > 0 and math.isfinite(value)):
        raise QuadratureError(f"non-positive or non-finite quadrature value for {params.describe()}")
    return QuadratureResult(value, err, n, peak)


# --------------------------------------------------------------------------
# Mellin transforms


@dataclass(frozen=True)
class MellinFamily:
    """Integrands with closed-form Mellin transforms.

    ``power_exp``: t^c e^(-t), transform Γ(c+s) for s > -c.
    ``stretched_exp``: e^(-t^(1/m)), transform m Γ(m s) for s > 0.
    """

    name: str
    param: float

    def __post_init__(self):
        if self.name not in ("power_exp", "stretched_exp"):
            raise ValueError(f"unknown Mellin family {self.name!r}")
        if self.name == "stretched_exp" and not self.param > 0:
            raise ValueError("stretched_exp needs m > 0")

    @classmethod
    def power_exp(cls, c: float = 0.0) -> "MellinFamily":
        return cls("power_exp", c)

    @classmethod
    def stretched_exp(cls, m: float) -> "MellinFamily":
        return cls("stretched_exp", m)

    def log_value_at_exp(self, w):
        """ln f(e^w), vectorised."""
        w = np.asarray(w, dtype=float)
        with np.errstate(over="ignore"):
            if self.name == "power_exp":
                return self.param * w - np.exp(w)
            return -np.exp(w / self.param)

    def strip_lower(self) -> float:
        return -self.param if self.name == "power_exp" else 0.0

    def closed_form(self, s: float) -> float:
        if self.name == "power_exp":
            return gamma(self.param + s)
        return self.param * gamma(self.param * s)


_GRID = np.linspace(-60.0, 60.0, 961)
_NEGLIGIBLE = 80.0  # e^-80 relative to the peak is dropped


def _integrate_log_profile(logf, rtol: float, scan=None) -> float:
    """∫_ℝ exp(logf(w)) dw for a unimodal-ish log-integrand.

    A coarse scan locates the peak and the window outside which the
    integrand is below e^-80 of its maximum; tails that are still
    significant at the scan edges are mapped to finite intervals.
    ``scan`` may supply a cheaper approximation of ``logf`` for the scan.
    """
    vals = (scan or logf)(_GRID)
    i = int(np.argmax(vals))
    top = float(vals[i])
    if not math.isfinite(top):
        return 0.0
    keep = np.nonzero(vals > top - _NEGLIGIBLE)[0]
    lo_i, hi_i = max(int(keep[0]) - 1, 0), min(int(keep[-1]) + 1, len(_GRID) - 1)
    lo, hi, center = float(_GRID[lo_i]), float(_GRID[hi_i]), float(_GRID[i])

    def f(w):
        with np.errstate(under="ignore", over="ignore"):
            return np.exp(logf(w) - top)

    pts = sorted({lo, center, hi})
    parts = [adaptive_integrate(f, pts, rtol)]
    if hi_i == len(_GRID) - 1:
        parts.append(adaptive_integrate(tail_map(f, hi), [0.0, 1.0], rtol))
    if lo_i == 0:
        parts.append(adaptive_integrate(tail_map(lambda w: f(-w), -lo), [0.0, 1.0], rtol))
    return math.fsum(p[0] for p in parts) * math.exp(top)


def mellin_transform(f: MellinFamily, s: float, tol: float = 1e-10) -> float:
    """∫₀^∞ t^(s-1) f(t) dt by quadrature in the variable w = ln t."""
    if not s > f.strip_lower():
        raise StripError(f"s={s} outside the strip s > {f.strip_lower()} of {f.name}")
    return _integrate_log_profile(lambda w: s * np.asarray(w) + f.log_value_at_exp(w), tol)


def _log_convolution_kernel(f1: MellinFamily, f2: MellinFamily, lu):
    def logf(w):
        w = np.asarray(w, dtype=float)
        return f1.log_value_at_exp(w) + f2.log_value_at_exp(lu - w)
    return logf


def mellin_convolution(f1: MellinFamily, f2: MellinFamily, u: float, tol: float = 1e-11) -> float:
    """g(u) = ∫₀^∞ v^(-1) f1(v) f2(u/v) dv, evaluated in w = ln v."""
    return _integrate_log_profile(_log_convolution_kernel(f1, f2, math.log(u)), tol)


def check_mellin_convolution(s_values, tol: float = 1e-9,
                             f1: MellinFamily = MellinFamily.power_exp(0.0),
                             f2: MellinFamily = MellinFamily.power_exp(0.0)) -> float:
    """Largest relative residual of M_g(s) = M_f1(s) M_f2(s) over ``s_values``.

    g is the multiplicative convolution of f1 and f2, computed pointwise by
    quadrature; its Mellin transform is then another quadrature over ln u,
    compared with the product of the closed-form transforms.
    """
    worst = 0.0
    lo = max(f1.strip_lower(), f2.strip_lower())
    ww = _GRID[:, None]
    for s in s_values:
        if not s > lo:
            raise StripError(f"s={s} outside the common strip s > {lo}")

        def scan(omega, s=s):
            # peak height of the inner kernel locates the outer window cheaply
            with np.errstate(over="ignore", invalid="ignore"):
                proxy = (f1.log_value_at_exp(ww) + f2.log_value_at_exp(omega[None, :] - ww)).max(axis=0)
            return s * omega + np.where(np.isnan(proxy), -np.inf, proxy)

        def log_outer(omega, s=s):
            omega = np.atleast_1d(np.asarray(omega, dtype=float))
            vals = np.array([mellin_convolution(f1, f2, math.exp(o), tol * 0.01) if abs(o) < 700 else 0.0
                             for o in omega])
            with np.errstate(divide="ignore"):
                return s * omega + np.log(vals)

        lhs = _integrate_log_profile(log_outer, tol, scan)
        rhs = f1.closed_form(s) * f2.closed_form(s)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst


power_exp = MellinFamily.power_exp
stretched_exp = MellinFamily.stretched_exp
