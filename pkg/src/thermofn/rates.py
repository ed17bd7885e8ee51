"""Maxwellian-averaged reaction rates from S-factor Taylor coefficients.

With σ(E) = S(E)/E · exp(-2πη) and E = y kT the Maxwell average becomes

    <σv> = sqrt(8/π) c (μc²)^(-1/2) (kT)^(-1/2)
           · [S0 I(z,0) + S1 kT I(z,1) + ½ S2 (kT)² I(z,2)],

with I one of I₁–I₄ depending on the plasma model.  Energies are in keV,
S-factors in keV·barn, rates in cm³/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy import integrate

from .config import Config
from .dispatch import EvalResult, evaluate
from .errors import DomainError
from .quadrature import IntegralParams, Kind

BARN_CM2 = 1e-24


@dataclass(frozen=True)
class ReactionSpec:
    Z1: int
    Z2: int
    mu: float                 # reduced mass, amu
    T: float                  # kelvin
    S0: float                 # keV·barn
    S1: float = 0.0           # barn
    S2: float = 0.0           # barn/keV
    screening_length: Optional[float] = None   # cm, or cm⁻¹ under the wavenumber convention
    screening_t: Optional[float] = None        # screening energy in units of kT
    cutoff_d: Optional[float] = None           # energy cutoff in units of kT
    depletion: Optional[tuple] = None          # (b, delta)

    def __post_init__(self):
        if int(self.Z1) != self.Z1 or int(self.Z2) != self.Z2 or self.Z1 < 1 or self.Z2 < 1:
            raise DomainError("charges must be integers >= 1")
        if not self.mu > 0 or not self.T > 0:
            raise DomainError("mu and T must be positive")
        screened = self.screening_length is not None or self.screening_t is not None
        if self.screening_length is not None and self.screening_t is not None:
            raise DomainError("give either screening_length or screening_t, not both")
        chosen = sum([screened, self.cutoff_d is not None, self.depletion is not None])
        if chosen > 1:
            raise DomainError("at most one of screening, cutoff_d, depletion may be set")
        if self.screening_length is not None and not self.screening_length > 0:
            raise DomainError("screening_length must be positive")
        if self.screening_t is not None and not self.screening_t >= 0:
            raise DomainError("screening_t must be >= 0")
        if self.cutoff_d is not None and not self.cutoff_d > 0:
            raise DomainError("cutoff_d must be positive")
        if self.depletion is not None:
            b, delta = self.depletion
            if not b >= 0 or not delta > 0:
                raise DomainError("depletion needs b >= 0 and delta > 0")

    @property
    def kind(self) -> Kind:
        if self.screening_length is not None or self.screening_t is not None:
            return Kind.I3
        if self.cutoff_d is not None:
            return Kind.I2
        if self.depletion is not None:
            return Kind.I4
        return Kind.I1


@dataclass(frozen=True)
class RateResult:
    sigma_v: float
    z_used: float
    t_used: float
    per_term: tuple
    methods: tuple


def kT_kev(spec: ReactionSpec, cfg: Config) -> float:
    return cfg.k_kev_per_k * spec.T


def map_z(spec: ReactionSpec, config: Config | None = None) -> float:
    """z = 2π Z1 Z2 α sqrt(μc² / 2kT)."""
    cfg = config or Config()
    mu_c2 = spec.mu * cfg.amu_kev
    return 2 * math.pi * spec.Z1 * spec.Z2 * cfg.alpha * math.sqrt(mu_c2 / (2 * kT_kev(spec, cfg)))


def map_screening_t(spec: ReactionSpec, config: Config | None = None) -> float:
    """Screening energy Z1 Z2 e²/R_D in units of kT.

    Under the ``wavenumber`` convention ``screening_length`` holds the
    inverse Debye length instead.
    """
    cfg = config or Config()
    if spec.screening_t is not None:
        return spec.screening_t
    if spec.screening_length is None:
        raise DomainError("no screening input given")
    if math.isinf(spec.screening_length):
        return 0.0 if cfg.screening_convention == "length" else math.inf
    e2 = spec.Z1 * spec.Z2 * cfg.e2_kev_cm
    if cfg.screening_convention == "length":
        energy = e2 / spec.screening_length
    else:
        energy = e2 * spec.screening_length
    return energy / kT_kev(spec, cfg)


def rate_prefactor(spec: ReactionSpec, cfg: Config) -> float:
    mu_c2 = spec.mu * cfg.amu_kev
    return math.sqrt(8 / math.pi) * cfg.c_cm_s / math.sqrt(mu_c2 * kT_kev(spec, cfg)) * BARN_CM2


def _params(spec: ReactionSpec, z: float, t: float, nu: int) -> IntegralParams:
    k = spec.kind
    if k is Kind.I2:
        return IntegralParams(k, z, nu, d=spec.cutoff_d)
    if k is Kind.I3:
        return IntegralParams(k, z, nu, t=t)
    if k is Kind.I4:
        b, delta = spec.depletion
        return IntegralParams(k, z, nu, b=b, delta=delta)
    return IntegralParams(k, z, nu)


def assemble_rate(spec: ReactionSpec, tol: float = 1e-8, config: Config | None = None,
                  method: str = "auto") -> RateResult:
    cfg = config or Config()
    z = map_z(spec, cfg)
    t = map_screening_t(spec, cfg) if spec.kind is Kind.I3 else 0.0
    kt = kT_kev(spec, cfg)
    pref = rate_prefactor(spec, cfg)
    coefs = (spec.S0, spec.S1 * kt, 0.5 * spec.S2 * kt * kt)
    terms, methods = [], []
    for nu, c in enumerate(coefs):
        if c == 0:
            terms.append(0.0)
            methods.append("")
            continue
        r: EvalResult = evaluate(_params(spec, z, t, nu), method, tol, cfg)
        terms.append(pref * c * r.value)
        methods.append(r.method.value)
    sigma_v = terms[0] + terms[1] + terms[2]
    if not sigma_v > 0:
        raise DomainError("S-factor coefficients give a non-positive rate")
    return RateResult(sigma_v, z, t, tuple(terms), tuple(methods))


def direct_rate_quadrature(spec: ReactionSpec, rtol: float = 1e-11,
                           config: Config | None = None) -> float:
    """<σv> straight from the velocity-space Maxwell average.

    4π (μc²/2πkT)^(3/2) c ∫ σ(β) β³ exp(-μc²β²/2kT) dβ with β = v/c, using
    the cross section in its physical form (Sommerfeld parameter η(v),
    screened energy shift, cutoff or depleted tail).  Independent of the
    I-function machinery; used to validate the decomposition.
    """
    cfg = config or Config()
    kt = kT_kev(spec, cfg)
    mu_c2 = spec.mu * cfg.amu_kev
    zz = spec.Z1 * spec.Z2 * cfg.alpha
    shift = map_screening_t(spec, cfg) * kt if spec.kind is Kind.I3 else 0.0

    def log_kernel(beta: float) -> float:
        e = 0.5 * mu_c2 * beta * beta
        if spec.kind is Kind.I3:
            # screened barrier: η evaluated at E + shift
            eta = zz / math.sqrt(2 * (e + shift) / mu_c2)
        else:
            eta = zz / beta
        out = -2 * math.pi * eta - e / kt
        if spec.kind is Kind.I4:
            b, delta = spec.depletion
            out -= b * (e / kt) ** delta
        return out

    def sigma_poly(e: float) -> float:
        return spec.S0 + spec.S1 * e + 0.5 * spec.S2 * e * e

    e0 = kt * (0.5 * map_z(spec, cfg)) ** (2 / 3)
    beta0 = math.sqrt(2 * e0 / mu_c2)
    ref = log_kernel(beta0)

    def f(beta: float) -> float:
        if beta <= 0:
            return 0.0
        e = 0.5 * mu_c2 * beta * beta
        # σ(E) β³ = S(E)/E · β³ · exp(-2πη), with E = μc²β²/2
        return sigma_poly(e) / e * beta ** 3 * math.exp(log_kernel(beta) - ref)

    width = beta0 * 0.5 + math.sqrt(kt / mu_c2)
    upper = math.inf
    if spec.kind is Kind.I2:
        upper = math.sqrt(2 * spec.cutoff_d * kt / mu_c2)
    pts = sorted({min(beta0, upper), min(beta0 + 4 * width, upper)})
    total = 0.0
    lo = 0.0
    for hi in pts:
        if hi > lo:
            total += integrate.quad(f, lo, hi, epsabs=0, epsrel=rtol, limit=500)[0]
            lo = hi
    if lo < upper:
        # the tail is small next to the peak region; bound it absolutely
        total += integrate.quad(f, lo, upper, epsabs=0.01 * rtol * total, epsrel=rtol, limit=500)[0]
    norm = 4 * math.pi * (mu_c2 / (2 * math.pi * kt)) ** 1.5 * cfg.c_cm_s * BARN_CM2
    return norm * total * math.exp(ref)
