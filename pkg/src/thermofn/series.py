"""Closed-form residue series for I₁–I₄.

I₁ and I₂ are evaluated term by term from their residue expansions; I₃ is
assembled from I₁ and I₂ by the binomial decomposition of the shifted
integral, and I₄ by expanding the depletion factor e^(-b y^δ).

The I₁/I₂ terms are exponentially large compared to the result once z
grows, so they are carried in ``decimal`` at a configurable working
precision (thread-local contexts keep this reentrant).  Every result
reports how many digits the cancellation consumed; once fewer than three
working digits survive the result is flagged untrusted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import Context, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import ConvergenceError, DomainError, SeriesDivergenceError
from .special import (
    EULER_GAMMA_STR, LN2_STR, MAX_DIGITS, PI_STR, coefficient_A_rational,
    coefficient_B_over_sqrt_pi, hyp0f2, pochhammer,
    to_decimal,
)
from .summation import FLOAT_EPS, TERM_CAP, NeumaierSum, sum_series

DEFAULT_DPS = 32
RELIABLE_DIGITS = 10
UNTRUSTED_DIGITS = 3
I4_GROWTH_FACTOR = 10.0


class Trust(str, enum.Enum):
    RELIABLE = "reliable"
    DEGRADED = "degraded"
    UNTRUSTED = "untrusted"


@dataclass(frozen=True)
class SeriesDiagnostics:
    terms_used: int
    max_partial_magnitude: float
    result_magnitude: float
    cancellation_digits: float
    converged: bool
    working_digits: int

    @property
    def digits_left(self) -> float:
        return self.working_digits - self.cancellation_digits


@dataclass(frozen=True)
class SeriesResult:
    value: float
    diagnostics: SeriesDiagnostics
    trust: Trust
    rel_error: float


def _diagnostics(total, max_mag, terms, converged, dps) -> SeriesDiagnostics:
    result = abs(total)
    if result == 0:
        canc = math.inf
    else:
        canc = max(0.0, float((Decimal(max_mag) / Decimal(result)).log10()))
    return SeriesDiagnostics(terms, float(max_mag), float(result), canc, converged, dps)


def _trust(diag: SeriesDiagnostics, positive: bool = True) -> Trust:
    if not diag.converged or not positive or diag.digits_left < UNTRUSTED_DIGITS:
        return Trust.UNTRUSTED
    if diag.digits_left < RELIABLE_DIGITS:
        return Trust.DEGRADED
    return Trust.RELIABLE


def _rel_error(diag: SeriesDiagnostics) -> float:
    # roundoff grows with the digits lost; factor 10 is a safety margin
    if not math.isfinite(diag.cancellation_digits):
        return math.inf
    return max(FLOAT_EPS, 10.0 ** (diag.cancellation_digits - diag.working_digits + 1))


def _context(dps: int) -> Context:
    if not 16 <= dps <= MAX_DIGITS:
        raise ValueError(f"working precision must lie in [16, {MAX_DIGITS}] digits")
    return Context(prec=dps, Emax=10**6, Emin=-10**6)


def _require_int(nu, what="nu") -> int:
    if nu < 0 or int(nu) != nu:
        raise DomainError(f"{what} must be a non-negative integer for the residue series, got {nu}")
    return int(nu)


@dataclass
class _Partial:
    """Decimal-valued series result before rounding to float."""

    value: Decimal
    max_mag: Decimal
    terms: int
    converged: bool


# --------------------------------------------------------------------------
# I1


def _i1_decimal(z: float, nu: int, dps: int, cap: int) -> _Partial:
    with localcontext(_context(dps)):
        D = Decimal
        eps = D(10) ** (-dps)
        x = D(z) * D(z) / 4

        # R1: finite sum over the simple poles s = 0, -1, ..., -nu
        r1 = NeumaierSum(D(0))
        g1 = factorial(nu)
        xr = D(1)
        for r in range(nu + 1):
            den = pochhammer(Fraction(1, 2), r) * pochhammer(-nu, r) * factorial(r)
            assert den != 0  # (-nu)_r vanishes only for r > nu
            r1.add(to_decimal(Fraction(g1 * (-1) ** r) / den) * xr)
            xr *= x
        if z == 0:
            return _Partial(r1.value, r1.max_magnitude, r1.count, True)

        # R2: half-integer poles, a 0F2 in -x
        sqrt_pi = D(PI_STR).sqrt()
        pref2 = -2 * sqrt_pi * to_decimal(pochhammer(Fraction(1, 2), nu)) * D(z) / 2
        f02, res2 = hyp0f2(Fraction(3, 2), Fraction(1, 2) - nu, -x, eps=eps, cap=cap)
        r2 = pref2 * f02

        # R3: double poles s = -nu-1-r
        log_x = x.ln()
        const = 3 * D(EULER_GAMMA_STR) + 2 * D(LN2_STR)
        a_r = to_decimal(coefficient_A_rational(0, nu)) - const
        b_r = to_decimal(coefficient_B_over_sqrt_pi(0, nu))  # B_r/√π
        lead = x ** (1 + nu)

        def r3_terms():
            nonlocal a_r, b_r
            xr = lead
            r = 0
            while True:
                yield xr * (a_r - log_x) * b_r
                r += 1
                xr *= x
                a_r += D(1) / r + D(1) / (r + nu + 1) + D(2) / (2 * (nu + r) + 1)
                b_r = -b_r / (r * (r + nu + 1) * (D(nu + r) + D("0.5")))

        res3 = sum_series(r3_terms(), eps=eps, cap=cap, zero=D(0), what="I1 double-pole series")
        total = r1.value + r2 + res3.value
        max_mag = max(r1.max_magnitude, abs(pref2) * res2.max_magnitude, res3.max_magnitude,
                      abs(r1.value + r2))
        return _Partial(total, max_mag, r1.count + res2.terms + res3.terms,
                        res2.converged and res3.converged)


@lru_cache(maxsize=4096)
def _i1_cached(z: float, nu: int, dps: int, cap: int) -> _Partial:
    return _i1_decimal(z, nu, dps, cap)


def _finish(p: _Partial, dps: int) -> SeriesResult:
    diag = _diagnostics(p.value, p.max_mag, p.terms, p.converged, dps)
    trust = _trust(diag, p.value > 0)
    return SeriesResult(float(p.value), diag, trust, _rel_error(diag))


def i1_series(z: float, nu: int, dps: int = DEFAULT_DPS, cap: int = TERM_CAP) -> SeriesResult:
    """I₁(z, ν) from its residue expansion (integer ν only).

    ``z = 0`` returns the z → 0⁺ limit Γ(ν+1).
    """
    if not z >= 0:
        raise DomainError("z must be >= 0")
    return _finish(_i1_cached(float(z), _require_int(nu), dps, cap), dps)


# --------------------------------------------------------------------------
# I2


class _Powers:
    """Lazily extended w^l / (l! (c)_l) for a half-integer c."""

    def __init__(self, w: Decimal, c: Fraction):
        self.w = w
        self.c = to_decimal(c)
        self.vals = [Decimal(1)]

    def __getitem__(self, l: int) -> Decimal:
        while len(self.vals) <= l:
            k = len(self.vals)
            self.vals.append(self.vals[-1] * self.w / (k * (self.c + (k - 1))))
        return self.vals[l]


class _I2Bracket:
    """Inner residue sum of I₂ for pole index N, in w = z²/(4d).

    The integer series skips l = N (the double pole); its contribution is
    the log term w^N/(N! (1/2)_N) · (A_N - ln w).
    """

    def __init__(self, z: Decimal, d: Decimal, eps: Decimal, cap: int):
        self.zero_z = z == 0
        self.w = z * z / (4 * d)
        self.sqrt_w = z / (2 * d.sqrt())
        self.p = _Powers(self.w, Fraction(1, 2))   # w^l / (l! (1/2)_l)
        self.q = _Powers(self.w, Fraction(3, 2))   # w^l / (l! (3/2)_l)
        self.log_w = None if self.zero_z else self.w.ln()
        self.gamma2 = 2 * Decimal(EULER_GAMMA_STR) + 2 * Decimal(LN2_STR)
        self.eps, self.cap = eps, cap
        self.terms = 0
        self.converged = True

    def __call__(self, n: int) -> tuple[Decimal, Decimal]:
        """(value, largest partial magnitude) for N = n."""
        if self.zero_z:
            return Decimal(1) / n, Decimal(1) / n
        p, q, cap = self.p, self.q, self.cap
        half = Decimal(n) - Decimal("0.5")
        s1 = sum_series((q[l] / (half - l) for l in range(cap)), eps=self.eps, cap=cap,
                        zero=Decimal(0), what="I2 half-integer series")
        s2 = sum_series((p[l] / (n - l) for l in range(cap) if l != n), eps=self.eps,
                        cap=cap, zero=Decimal(0), what="I2 integer series")
        # H_N + sum_{k<N} 1/(k+1/2) - 2γ - 2 ln 2
        a_n = to_decimal(coefficient_A_rational(0, n - 1)) - self.gamma2
        # 2 w^N / (N! (3/2)_{N-1}) == w^N / (N! (1/2)_N)
        log_term = p[n] * (a_n - self.log_w)
        self.terms += s1.terms + s2.terms + 1
        self.converged &= s1.converged and s2.converged
        m = max(2 * self.sqrt_w * s1.max_magnitude, s2.max_magnitude, abs(log_term))
        return -2 * self.sqrt_w * s1.value + s2.value + log_term, m


def i2_bracket(z: float, d: float, n: int, dps: int = DEFAULT_DPS, cap: int = TERM_CAP) -> float:
    """Single inner sum of I₂; equals G^{3,0}_{1,3}(z²/4d | N+1; N, 0, 1/2)/√π."""
    with localcontext(_context(dps)):
        return float(_I2Bracket(Decimal(z), Decimal(d), Decimal(10) ** (-dps), cap)(n)[0])


def _i2_decimal(z: float, d: float, nu: int, dps: int, cap: int) -> _Partial:
    with localcontext(_context(dps)):
        eps = Decimal(10) ** (-dps)
        dd = Decimal(d)
        inner = _I2Bracket(Decimal(z), dd, eps, cap)
        scale = dd ** (nu + 1)
        biggest = Decimal(0)

        def outer_terms():
            nonlocal biggest
            coef = scale
            r = 0
            while True:
                val, m = inner(nu + r + 1)
                biggest = max(biggest, m * abs(coef))
                yield coef * val
                r += 1
                coef = -coef * dd / r

        res = sum_series(outer_terms(), eps=eps, cap=cap, zero=Decimal(0), what="I2 outer series")
        return _Partial(res.value, max(biggest, res.max_magnitude), inner.terms + res.terms,
                        inner.converged and res.converged)


@lru_cache(maxsize=4096)
def _i2_cached(z: float, d: float, nu: int, dps: int, cap: int) -> _Partial:
    return _i2_decimal(z, d, nu, dps, cap)


def i2_series(z: float, d: float, nu: int, dps: int = DEFAULT_DPS, cap: int = TERM_CAP) -> SeriesResult:
    """I₂(z, d, ν): outer sum over e^(-y) powers, inner residue sums in z²/(4d)."""
    if not z >= 0:
        raise DomainError("z must be >= 0")
    if not d > 0:
        raise DomainError("cutoff d must be > 0")
    return _finish(_i2_cached(float(z), float(d), _require_int(nu), dps, cap), dps)


# --------------------------------------------------------------------------
# I3


def _i3_decimal(z: float, t: float, nu: int, dps: int, cap: int) -> _Partial:
    with localcontext(_context(dps)):
        D = Decimal
        et = D(t).exp()
        acc = NeumaierSum(D(0))
        max_mag = D(0)
        terms = 0
        converged = True
        for r in range(nu + 1):
            if t == 0 and r < nu:
                continue  # (-t)^(nu-r) vanishes
            coef = et * comb(nu, r) * ((-D(t)) ** (nu - r) if r < nu else 1)
            c1 = _i1_cached(z, r, dps, cap)
            part = c1.value
            m = c1.max_mag
            terms += c1.terms
            converged &= c1.converged
            if t != 0:
                c2 = _i2_cached(z, t, r, dps, cap)
                part = part - c2.value
                m = max(m, c2.max_mag)
                terms += c2.terms
                converged &= c2.converged
            contrib = coef * part
            acc.add(contrib)
            max_mag = max(max_mag, abs(coef) * m)
        return _Partial(acc.value, max(max_mag, acc.max_magnitude), terms, converged)


def i3_series(z: float, t: float, nu: int, dps: int = DEFAULT_DPS, cap: int = TERM_CAP) -> SeriesResult:
    """I₃(z, t, ν) = e^t Σ C(ν,r)(-t)^(ν-r) [I₁(z,r) - I₂(z,t,r)]."""
    if not z >= 0:
        raise DomainError("z must be >= 0")
    if not t >= 0:
        raise DomainError("screening parameter t must be >= 0")
    return _finish(_i3_decimal(float(z), float(t), _require_int(nu), dps, cap), dps)


# --------------------------------------------------------------------------
# I4


def _near_int(x: float) -> bool:
    return abs(x - round(x)) <= 1e-12 * max(1.0, abs(x))


def i4_series(z: float, delta: float, b: float, nu: float, dps: int = DEFAULT_DPS,
              cap: int = TERM_CAP, growth_factor: float = I4_GROWTH_FACTOR,
              inner_tol: float = 1e-13) -> SeriesResult:
    """I₄ by expanding e^(-b y^δ): Σ_r (-b)^r/r! · I₁(z, ν + rδ).

    Integer inner orders use the I₁ residue series, non-integer ones the
    quadrature oracle.  The outer sum is abandoned with
    SeriesDivergenceError once a term exceeds ``growth_factor`` times the
    first term while still growing; terms that grow before shrinking
    downgrade the result to at most ``degraded``.
    """
    from .quadrature import IntegralParams, Kind, oracle_eval

    if not z >= 0:
        raise DomainError("z must be >= 0")
    if not delta > 0 or not b >= 0 or not nu >= 0:
        raise DomainError("I4 needs delta > 0, b >= 0, nu >= 0")
    worst = Trust.RELIABLE
    inner_err = FLOAT_EPS
    state = {"first": None, "prev": None, "grew": False, "inner_terms": 0}

    def inner(order: float) -> float:
        nonlocal worst, inner_err
        if _near_int(order):
            s = i1_series(z, int(round(order)), dps, cap)
            state["inner_terms"] += s.diagnostics.terms_used
            if s.trust is not Trust.RELIABLE:
                worst = max(worst, s.trust, key=_TRUST_ORDER.index)
            inner_err = max(inner_err, s.rel_error)
            return s.value
        q = oracle_eval(IntegralParams(Kind.I1, z, order), inner_tol)
        inner_err = max(inner_err, q.abs_error_estimate / q.value)
        return q.value

    def terms():
        coef = 1.0
        r = 0
        while True:
            try:
                val = inner(nu + r * delta)
                term = coef * val
            except OverflowError as exc:
                raise SeriesDivergenceError(f"I4 outer term {r} overflows") from exc
            if not math.isfinite(term):
                raise SeriesDivergenceError(f"I4 outer term {r} is not finite")
            mag = abs(term)
            if state["first"] is None:
                state["first"] = mag
            elif state["prev"] is not None and mag > state["prev"]:
                state["grew"] = True
                if mag > growth_factor * state["first"]:
                    raise SeriesDivergenceError(
                        f"I4 outer series diverging: |term {r}| = {mag:.3g} exceeds "
                        f"{growth_factor:g} x first term; expansion of e^(-b y^delta) invalid")
            state["prev"] = mag
            yield term
            r += 1
            coef = -coef * b / r
            if coef == 0.0:
                return

    try:
        res = sum_series(terms(), eps=FLOAT_EPS, cap=cap, what="I4 outer series")
    except ConvergenceError as exc:
        if isinstance(exc, SeriesDivergenceError):
            raise
        raise SeriesDivergenceError(str(exc)) from exc
    value = res.value
    canc = math.log10(res.max_magnitude / abs(value)) if value != 0 else math.inf
    diag = SeriesDiagnostics(res.terms + state["inner_terms"], res.max_magnitude, abs(value),
                             max(0.0, canc), res.converged, 16)
    trust = _trust(diag, value > 0)
    if state["grew"] and trust is Trust.RELIABLE:
        trust = Trust.DEGRADED
    if _TRUST_ORDER.index(worst) > _TRUST_ORDER.index(trust):
        trust = worst
    rel = max(_rel_error(diag), inner_err * 10.0 ** diag.cancellation_digits)
    return SeriesResult(value, diag, trust, rel)


_TRUST_ORDER = [Trust.RELIABLE, Trust.DEGRADED, Trust.UNTRUSTED]
