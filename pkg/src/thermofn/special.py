"""Gamma-function machinery and the residue-series coefficients.

Float-valued entry points for Γ, Pochhammer symbols, harmonic sums, the
₀F₂ series and the double-pole coefficients A_r, B_r.  The exact rational
pieces (harmonic sums, B_r/√π) are also exposed as ``Fraction`` so the
extended-precision series code can consume them without rounding.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from .errors import PoleError
from .summation import FLOAT_EPS, TERM_CAP, SumResult, sum_series

EULER_GAMMA = 0.57721566490153286

# 60 significant digits, used to seed Decimal contexts
PI_STR = "3.14159265358979323846264338327950288419716939937510582097494"
EULER_GAMMA_STR = "0.577215664901532860606512090082402431042159335939923598805767"
LN2_STR = "0.693147180559945309417232121458176568075500134360255254120680"
MAX_DIGITS = 60


def _is_pole(x: float) -> bool:
    return x <= 0 and float(x) == math.floor(x)


def gamma(x: float) -> float:
    """Γ(x) for real x, reflection handled for negative arguments."""
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at {x}")
    return math.gamma(x)


def log_gamma(x: float) -> tuple[float, int]:
    """Return ``(ln|Γ(x)|, sign Γ(x))``."""
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x > 0:
        return math.lgamma(x), 1
    # sign of Γ on (-k-1, -k) is (-1)^(k+1)
    k = math.floor(-x)
    return math.lgamma(x), (-1) ** (k + 1)


def pochhammer(a, r: int):
    """Rising factorial (a)_r; type-generic so Fractions stay exact."""
    if r < 0:
        raise ValueError("pochhammer index must be non-negative")
    out = a * 0 + 1
    for k in range(r):
        out *= a + k
    return out


def gamma_half_integer(k: int) -> Fraction:
    """Rational c with Γ(k + 1/2) = c·√π, for any integer k.

    Built by recurrence from Γ(1/2) = √π, never touching a pole.
    """
    c = Fraction(1)
    if k >= 0:
        for j in range(k):
            c *= Fraction(2 * j + 1, 2)
    else:
        for j in range(0, k, -1):
            # Γ(a-1) = Γ(a)/(a-1)
            c /= Fraction(2 * j - 1, 2)
    return c


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """1 + 1/2 + ... + 1/n (zero for n = 0)."""
    if n <= 0:
        return Fraction(0)
    return harmonic(n - 1) + Fraction(1, n)


@lru_cache(maxsize=None)
def half_harmonic(n: int) -> Fraction:
    """1/(1/2) + 1/(3/2) + ... over n terms, i.e. sum of 2/(2k+1), k < n."""
    if n <= 0:
        return Fraction(0)
    return half_harmonic(n - 1) + Fraction(2, 2 * n - 1)


def coefficient_A_rational(r: int, nu: int) -> Fraction:
    """Rational part of A_r (everything except -3γ - 2 ln 2)."""
    _check_index(r, nu)
    return harmonic(r) + harmonic(r + nu + 1) + half_harmonic(nu + r + 1)


def coefficient_A(r: int, nu: int) -> float:
    """Double-pole coefficient A_r of the I₁ residue series."""
    q = coefficient_A_rational(r, nu)
    return math.fsum([float(q), -3.0 * EULER_GAMMA, -2.0 * math.log(2.0)])


def coefficient_B_over_sqrt_pi(r: int, nu: int) -> Fraction:
    """B_r/√π as an exact rational."""
    _check_index(r, nu)
    g = gamma_half_integer(-nu - 1)  # Γ(-1/2-ν)/√π
    sign = -1 if (1 + nu + r) % 2 else 1
    den = math.factorial(r) * math.factorial(r + nu + 1) * pochhammer(Fraction(3, 2) + nu, r)
    return sign * g / den


def coefficient_B(r: int, nu: int) -> float:
    """Double-pole coefficient B_r, evaluated in log space with sign tracking."""
    _check_index(r, nu)
    lg, sg = log_gamma(-0.5 - nu)
    sign = sg * (-1 if (1 + nu + r) % 2 else 1)
    log_den = math.lgamma(r + 1) + math.lgamma(r + nu + 2) \
        + math.lgamma(1.5 + nu + r) - math.lgamma(1.5 + nu)
    return sign * math.exp(lg - log_den)


def _check_index(r: int, nu: int) -> None:
    if r < 0 or nu < 0 or int(r) != r or int(nu) != nu:
        raise ValueError("coefficient indices must be non-negative integers")


def hyp0f2(a, b, x, eps=None, cap: int = TERM_CAP) -> tuple:
    """₀F₂(−; a, b; x) by direct summation.

    Works in the arithmetic of ``x`` (float or Decimal).  Returns
    ``(value, SumResult)``; the SumResult carries the term count.
    """
    for p in (a, b):
        if float(p) <= 0 and float(p) == math.floor(float(p)):
            raise ValueError(f"0F2 parameter {p} is a non-positive integer")
    if isinstance(x, Decimal):
        num = _to_decimal
        zero = Decimal(0)
        if eps is None:
            from decimal import getcontext
            eps = Decimal(10) ** (-getcontext().prec)
    else:
        num = float
        zero = 0.0
        if eps is None:
            eps = FLOAT_EPS
    a_, b_ = num(a), num(b)

    def terms():
        t = zero + 1
        r = 0
        while True:
            yield t
            r += 1
            t = t * x / (r * (a_ + (r - 1)) * (b_ + (r - 1)))

    res = sum_series(terms(), eps=eps, cap=cap, zero=zero, what="0F2")
    return res.value, res


def _to_decimal(v) -> Decimal:
    if isinstance(v, Fraction):
        return Decimal(v.numerator) / Decimal(v.denominator)
    if isinstance(v, Decimal):
        return v
    return Decimal(v)


def to_decimal(v) -> Decimal:
    """Convert int/float/Fraction to Decimal in the current context."""
    return _to_decimal(v)


def check_multiplication_formula(m: int, z: float) -> float:
    """Relative residual of Gauss's multiplication formula for Γ(mz)."""
    if m < 1 or int(m) != m:
        raise ValueError("m must be an integer >= 1")
    lhs = gamma(m * z)
    prod = 1.0
    for j in range(m):
        prod *= gamma(z + j / m)
    rhs = (2.0 * math.pi) ** ((1 - m) / 2) * float(m) ** (m * z - 0.5) * prod
    return abs(lhs - rhs) / abs(lhs)


__all__ = [
    "EULER_GAMMA", "gamma", "log_gamma", "pochhammer", "gamma_half_integer",
    "harmonic", "half_harmonic", "coefficient_A", "coefficient_A_rational",
    "coefficient_B", "coefficient_B_over_sqrt_pi", "hyp0f2",
    "check_multiplication_formula", "SumResult", "to_decimal",
]
