"""Leading-order large-z forms of I₁–I₄ and of G^{q,0}_{p,q}.

All four follow from the G-function asymptotic

    G^{q,0}_{p,q}(x) ~ (2π)^((σ-1)/2) σ^(-1/2) exp(-σ x^(1/σ)) x^θ,
    σ = q - p,   σθ = (1-σ)/2 + Σb - Σa,

applied to the I₁ and I₂ representations.  Only positive real arguments
are supported, so the sector condition on arg x never enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .meijer import GFunctionSpec

_TWO_SQRT_PI_3 = 2.0 * math.sqrt(math.pi / 3.0)


@dataclass(frozen=True)
class AsymptoticParams:
    sigma: int
    theta: float
    prefactor: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise DomainError("asymptotic form needs q > p")
        if not math.isfinite(self.theta):
            raise DomainError("theta must be finite")


def asymptotic_params(spec: GFunctionSpec) -> AsymptoticParams:
    if spec.n != 0 or spec.m != spec.q:
        raise DomainError("asymptotic form only for G^{q,0}_{p,q}")
    sigma = spec.q - spec.p
    if sigma <= 0:
        raise DomainError("asymptotic form needs q > p")
    theta = ((1 - sigma) / 2 + sum(float(b) for b in spec.b_params)
             - sum(float(a) for a in spec.a_params)) / sigma
    pref = (2 * math.pi) ** ((sigma - 1) / 2) / math.sqrt(sigma)
    return AsymptoticParams(sigma, theta, pref)


def g_asymptotic(spec: GFunctionSpec, z: float | None = None) -> float:
    """Leading-order G^{q,0}_{p,q}(z); ``z`` defaults to the stored argument."""
    x = spec.argument if z is None else z
    if not x > 0:
        raise DomainError("argument must be positive")
    ap = asymptotic_params(spec)
    return ap.prefactor * math.exp(-ap.sigma * x ** (1 / ap.sigma) + ap.theta * math.log(x))


def _check_z(z: float) -> float:
    if not z > 0:
        raise DomainError("asymptotic forms need z > 0")
    return z * z / 4


def i1_asymptotic(z: float, nu: float) -> float:
    x = _check_z(z)
    c = x ** (1 / 3)
    return _TWO_SQRT_PI_3 * math.exp((2 * nu + 1) / 6 * math.log(x) - 3 * c)


def i2_asymptotic(z: float, d: float, nu: float) -> float:
    _check_z(z)
    if not d > 0:
        raise DomainError("cutoff d must be > 0")
    w = z * z / (4 * d)
    return math.exp((nu + 1) * math.log(d) - d - 0.5 * math.log(w) - 2 * math.sqrt(w))


def i3_asymptotic(z: float, t: float, nu: float) -> float:
    x = _check_z(z)
    c = x ** (1 / 3)
    if not c > t:
        raise DomainError(f"(z²/4)^(1/3) = {c:.6g} must exceed t = {t:.6g}")
    return _TWO_SQRT_PI_3 * math.exp(t + math.log(x) / 6 - 3 * c + nu * math.log(c - t))


def i4_asymptotic(z: float, delta: float, b: float, nu: float) -> float:
    x = _check_z(z)
    return i1_asymptotic(z, nu) * math.exp(-b * x ** (delta / 3))


def error_scale(kind: str, z: float, nu: float = 0.0, d: float | None = None,
                t: float | None = None, b: float | None = None,
                delta: float | None = None) -> float:
    """Shape of the leading relative error, up to a calibrated constant.

    I₁/I₃ errors fall like (1+ν)² x^(-1/3), I₂ like (1+ν) d^(3/2)/z.  For I₄
    the saddle shift from e^(-b y^δ) adds b δ x^((δ-1)/3) and
    (b δ)² x^((2δ-1)/3); the latter only decays for δ < 1/2.
    Returns ``inf`` outside the domain where the formula applies.
    """
    x = z * z / 4
    c = x ** (1 / 3)
    k = (1 + nu) ** 2
    if kind == "i1":
        return k / c
    if kind == "i2":
        return (1 + nu) * max(d, 1.0) ** 1.5 / z
    if kind == "i3":
        if c <= t:
            return math.inf
        return k * (1 + t) / (c - t)
    if kind == "i4":
        if delta >= 0.5:
            return math.inf
        bd = b * delta
        return k / c + bd * c ** (delta - 1) + bd * bd * c ** (2 * delta - 1)
    raise ValueError(f"unknown integral kind {kind!r}")


__all__ = [
    "AsymptoticParams", "asymptotic_params", "g_asymptotic", "i1_asymptotic",
    "i2_asymptotic", "i3_asymptotic", "i4_asymptotic", "error_scale",
]
