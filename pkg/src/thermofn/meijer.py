"""Meijer G-functions G^{q,0}_{p,q} by residue summation.

Only the shapes needed for I₁ and I₂ are evaluated numerically
(p = 0 with q ≤ 3, and p = 1 with q = 3), but pole bookkeeping and the
representation of the general (m, n) integral work for any sizes.

Convention: the Mellin-Barnes integrand is
    ∏ Γ(b_j + s) / ∏ Γ(a_j + s) · x^(-s),
closed to the left, so G is the sum of residues at the poles of the
numerator gammas that the denominator does not cancel.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np
from scipy.special import digamma

from .errors import ConvergenceError, DomainError
from .special import gamma, log_gamma
from .summation import FLOAT_EPS, TERM_CAP, sum_series


def _exact(v) -> Fraction:
    """Rational value of a parameter; floats are snapped to nearby small fractions."""
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    f = Fraction(v).limit_denominator(10**6)
    if abs(float(f) - v) <= 4 * FLOAT_EPS * max(1.0, abs(v)):
        return f
    return Fraction(v)


@dataclass(frozen=True)
class GFunctionSpec:
    m: int
    n: int
    p: int
    q: int
    a_params: tuple
    b_params: tuple
    argument: float

    def __post_init__(self):
        object.__setattr__(self, "a_params", tuple(self.a_params))
        object.__setattr__(self, "b_params", tuple(self.b_params))
        if len(self.a_params) != self.p or len(self.b_params) != self.q:
            raise DomainError("parameter lists must have lengths p and q")
        if not (0 <= self.n <= self.p and 0 <= self.m <= self.q and self.q >= 1 and self.p < self.q):
            raise DomainError(f"invalid G-function orders m={self.m} n={self.n} p={self.p} q={self.q}")
        if not self.argument > 0:
            raise DomainError("G-function argument must be positive")
        # Γ(b_j + s) and Γ(1 - a_k - s) must not share poles
        for a in self.a_params[: self.n]:
            for b in self.b_params[: self.m]:
                diff = _exact(a) - _exact(b)
                if diff.denominator == 1 and diff >= 1:
                    raise DomainError(f"poles of b={b} and a={a} coincide")

    @property
    def sigma(self) -> int:
        return self.q - self.p


@dataclass(frozen=True)
class Pole:
    location: Fraction
    order: int
    b_indices: tuple


@dataclass
class PoleTable:
    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _iter_poles(spec: GFunctionSpec) -> Iterator[Pole]:
    """Poles of the integrand in strictly decreasing location."""
    if spec.n != 0 or spec.m != spec.q:
        raise DomainError("only G^{q,0}_{p,q} is supported")
    bs = [_exact(b) for b in spec.b_params]
    as_ = [_exact(a) for a in spec.a_params]
    heap = [(b, j, 0) for j, b in enumerate(bs)]  # keyed on -location = b + k
    heapq.heapify(heap)
    while heap:
        key = heap[0][0]
        idx = []
        while heap and heap[0][0] == key:
            _, j, k = heapq.heappop(heap)
            idx.append(j)
            heapq.heappush(heap, (bs[j] + k + 1, j, k + 1))
        loc = -key
        # denominator Γ(a + s) has a pole here iff a + loc is a non-positive integer
        zeros = sum(1 for a in as_ if (a + loc).denominator == 1 and a + loc <= 0)
        order = len(idx) - zeros
        if order > 0:
            yield Pole(loc, order, tuple(sorted(idx)))


def enumerate_poles(spec: GFunctionSpec, count: int) -> PoleTable:
    """First ``count`` poles of ∏Γ(b_j + s)/∏Γ(a_j + s), highest first."""
    out = []
    for pole in _iter_poles(spec):
        if len(out) >= count:
            break
        out.append(pole)
    return PoleTable(out)


def _gamma_factor(c: Fraction, denominator: bool):
    """Local data of Γ(c + ε)^(±1) at ε = 0: (power of ε, ln|coef|, sign, first-order log-derivative)."""
    if c.denominator == 1 and c <= 0:
        k = int(-c)
        lg = math.lgamma(k + 1)
        sign = -1 if k % 2 else 1
        psi = float(digamma(k + 1))
        # Γ(-k+ε) = (-1)^k/k! · ε⁻¹ (1 + ψ(k+1) ε + ...)
        if denominator:
            return 1, lg, sign, -psi
        return -1, -lg, sign, psi
    lg, sign = log_gamma(float(c))
    psi = float(digamma(float(c)))
    if denominator:
        return 0, -lg, sign, -psi
    return 0, lg, sign, psi


def _residue(spec: GFunctionSpec, pole: Pole, log_x: float) -> float:
    power = 0
    log_mag = 0.0
    sign = 1
    deriv = 0.0
    for params, den in ((spec.b_params, False), (spec.a_params, True)):
        for v in params:
            e, lg, sg, d = _gamma_factor(_exact(v) + pole.location, den)
            power += e
            log_mag += lg
            sign *= sg
            deriv += d
    order = -power
    if order != pole.order:
        raise AssertionError("pole order bookkeeping mismatch")
    s0 = float(pole.location)
    lead = sign * math.exp(log_mag - s0 * log_x)
    if order == 1:
        return lead
    if order == 2:
        return lead * (deriv - log_x)
    raise DomainError(f"poles of order {order} are not supported")


def _check_shape(spec: GFunctionSpec) -> None:
    if not ((spec.p == 0 and spec.q <= 3) or (spec.p == 1 and spec.q == 3)):
        raise DomainError(f"unsupported G-function shape p={spec.p}, q={spec.q}")
    if spec.n != 0 or spec.m != spec.q:
        raise DomainError("only G^{q,0}_{p,q} is supported")


def g_residue_eval(spec: GFunctionSpec, eps: float = FLOAT_EPS, cap: int = TERM_CAP) -> float:
    """G^{q,0}_{p,q}(x) as a truncated residue sum (poles of order ≤ 2)."""
    _check_shape(spec)
    log_x = math.log(spec.argument)
    res = sum_series((_residue(spec, pole, log_x) for pole in _iter_poles(spec)),
                     eps=eps, cap=cap, what="G-function residue sum")
    if not res.converged:
        raise ConvergenceError("G-function residue sum did not converge")
    return res.value


def i1_g_spec(z: float, nu: float) -> GFunctionSpec:
    """G^{3,0}_{0,3}(z²/4 | 0, 1/2, 1+ν), which equals √π·I₁(z, ν)."""
    return GFunctionSpec(3, 0, 0, 3, (), (0, Fraction(1, 2), 1 + _exact(nu)), z * z / 4)


def i1_via_g(z: float, nu: float) -> float:
    return g_residue_eval(i1_g_spec(z, nu)) / math.sqrt(math.pi)


def i2_g_spec(z: float, d: float, nu: float, r: int) -> GFunctionSpec:
    """G^{3,0}_{1,3}(z²/4d | ν+r+2; ν+r+1, 0, 1/2), the r-th inner function of I₂."""
    n = _exact(nu) + r + 1
    return GFunctionSpec(3, 0, 1, 3, (n + 1,), (n, 0, Fraction(1, 2)), z * z / (4 * d))


def i2_via_g(z: float, d: float, nu: float, cap: int = TERM_CAP) -> float:
    """I₂ assembled from its G-function expansion in powers of (-d)."""
    pref = d ** (1 + nu) / math.sqrt(math.pi)

    def terms():
        coef = 1.0
        r = 0
        while True:
            yield coef * g_residue_eval(i2_g_spec(z, d, nu, r))
            r += 1
            coef *= -d / r

    res = sum_series(terms(), cap=cap, what="I2 G-function expansion")
    return pref * res.value


# --------------------------------------------------------------------------
# general (m, n) representation


def barrier_g_spec(m: int, n: int, p: float, rho: float, z: float) -> tuple[GFunctionSpec, float]:
    """G-function form of p∫ t^(-nρ) e^(-pt) e^(-z t^(-n/m)) dt.

    Returns ``(spec, prefactor)`` with the integral equal to
    ``prefactor * G(spec)``.  For n = 1 the exponent n/m is just 1/m.
    """
    if int(m) != m or int(n) != n or m < 1 or n < 1:
        raise DomainError("m and n must be integers >= 1")
    if not p > 0 or not z > 0:
        raise DomainError("p and z must be positive")
    if rho > 0:
        raise DomainError("rho must be <= 0")
    rho_ = _exact(rho)
    b = [Fraction(j, m) for j in range(m)] + [(j - n * rho_) / n for j in range(1, n + 1)]
    arg = z**m * p**n / (m**m * n**n)
    pref = p ** (n * rho) * (2 * math.pi) ** ((2 - n - m) / 2) * math.sqrt(m) * n ** (0.5 - n * rho)
    spec = GFunctionSpec(m + n, 0, 0, m + n, (), tuple(b), arg)
    return spec, pref


def barrier_integral(m: int, n: int, p: float, rho: float, z: float, tol: float = 1e-12) -> float:
    """Left side p∫₀^∞ t^(-nρ) e^(-pt) e^(-z t^(-n/m)) dt by adaptive quadrature."""
    from .quadrature import adaptive_integrate, tail_map

    k = n / m

    def f(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            e = -p * t - z * t ** (-k) - n * rho * np.log(t)
            return np.where(t > 0, p * np.exp(np.minimum(e, 700.0)), 0.0)

    # peak of the log-integrand, found on a log grid
    grid = [10 ** (j / 20) for j in range(-200, 81)]
    t_peak = max(grid, key=lambda t: -n * rho * math.log(t) - p * t - z * t ** (-k))
    head, _, _ = adaptive_integrate(f, [0.0, t_peak, 4 * t_peak + 10 / p], rtol=tol)
    tail, _, _ = adaptive_integrate(tail_map(f, 4 * t_peak + 10 / p), [0.0, 1.0], rtol=tol)
    return head + tail


def multiplication_rewrite_residual(n: int, rho: float, s: float) -> float:
    """Relative residual of Γ(1-nρ+ns) = (2π)^((1-n)/2) n^(1/2-nρ+ns) ∏_j Γ((j-nρ)/n + s)."""
    lhs = gamma(1 - n * rho + n * s)
    prod = 1.0
    for j in range(1, n + 1):
        prod *= gamma((j - n * rho) / n + s)
    rhs = (2 * math.pi) ** ((1 - n) / 2) * float(n) ** (0.5 - n * rho + n * s) * prod
    return abs(lhs - rhs) / abs(lhs)


__all__ = [
    "GFunctionSpec", "Pole", "PoleTable", "enumerate_poles", "g_residue_eval",
    "i1_g_spec", "i2_g_spec", "i1_via_g", "i2_via_g",
    "barrier_g_spec", "barrier_integral", "multiplication_rewrite_residual",
]
