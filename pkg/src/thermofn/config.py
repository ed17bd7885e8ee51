"""Run configuration: tolerances, caps, physical constants, calibration.

The on-disk format is flat ``key = value`` lines with ``#`` comments.
Calibration tables use dotted keys, e.g. ``asym_c.i1 = 0.26`` or
``series_zmax.i2.nu1 = 40``.  Every key has a default, so no file is
needed.  ``THERMOFN_CONFIG`` names a file to load when no path is given.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

ENV_VAR = "THERMOFN_CONFIG"

# Output of `thermofn calibrate` at the default tolerances.
DEFAULT_ASYM_C = {"i1": 0.26, "i2": 1.7, "i3": 0.23, "i4": 0.25}
DEFAULT_SERIES_ZMAX = {
    "i1.nu0": 51.95, "i1.nu1": 51.95, "i1.nu2": 51.95,
    "i2.nu0": 51.95, "i2.nu1": 51.95, "i2.nu2": 51.95,
    "i3.nu0": 33.14, "i3.nu1": 33.14, "i3.nu2": 33.14,
    "i4.nu0": 60.34, "i4.nu1": 60.34, "i4.nu2": 60.34,
}

SCREENING_CONVENTIONS = ("length", "wavenumber")


@dataclass(frozen=True)
class Config:
    oracle_tol: float = 1e-10
    auto_tol: float = 1e-6
    series_dps: int = 32
    term_cap: int = 500
    # a series is accepted only while this many working digits survive
    series_min_digits: float = 10.0
    i4_growth_factor: float = 10.0

    # CODATA 2018
    alpha: float = 7.2973525693e-3
    c_cm_s: float = 2.99792458e10
    amu_kev: float = 931494.10242
    k_kev_per_k: float = 8.617333262e-8
    hbar_c_kev_cm: float = 1.973269804e-8

    # "length": screening input is the Debye length (t = Z1 Z2 e² / (R_D kT));
    # "wavenumber": input is its inverse K (t = Z1 Z2 e² K / kT)
    screening_convention: str = "length"

    asym_c: dict = field(default_factory=lambda: dict(DEFAULT_ASYM_C))
    series_zmax: dict = field(default_factory=lambda: dict(DEFAULT_SERIES_ZMAX))

    def __post_init__(self):
        if self.screening_convention not in SCREENING_CONVENTIONS:
            raise ValueError(f"screening_convention must be one of {SCREENING_CONVENTIONS}")
        if not 1e-14 <= self.oracle_tol <= 1e-4:
            raise ValueError("oracle_tol must lie in [1e-14, 1e-4]")
        if self.term_cap < 10:
            raise ValueError("term_cap must be at least 10")

    @property
    def e2_kev_cm(self) -> float:
        return self.alpha * self.hbar_c_kev_cm

    def zmax(self, kind: str, nu: float) -> float:
        """Series pre-filter bound for (kind, ν); nearest calibrated ν wins."""
        candidates = {int(k.split(".nu")[1]): v for k, v in self.series_zmax.items()
                      if k.startswith(kind + ".nu")}
        if not candidates:
            return 0.0
        key = min(candidates, key=lambda n: (abs(n - nu), n))
        return candidates[key]

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, dict):
                lines.extend(f"{f.name}.{k} = {v[k]!r}" for k in sorted(v))
            else:
                lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"


def _coerce(raw: str, like):
    if isinstance(like, bool):
        return raw.lower() in ("1", "true", "yes")
    if isinstance(like, int):
        return int(raw)
    if isinstance(like, float):
        return float(raw)
    return raw


def parse_config(text: str, base: Config | None = None) -> Config:
    base = base or Config()
    scalars = {}
    tables = {f.name: dict(getattr(base, f.name)) for f in fields(base)
              if isinstance(getattr(base, f.name), dict)}
    known = {f.name: getattr(base, f.name) for f in fields(base)}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        head, _, sub = key.partition(".")
        if head in tables and sub:
            tables[head][sub] = float(raw)
        elif key in known and key not in tables:
            scalars[key] = _coerce(raw, known[key])
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    return replace(base, **scalars, **tables)


def load_config(path: str | os.PathLike | None = None) -> Config:
    if path is None:
        path = os.environ.get(ENV_VAR)
    if not path:
        return Config()
    return parse_config(Path(path).read_text())


def write_config(cfg: Config, path: str | os.PathLike) -> None:
    Path(path).write_text(cfg.to_text())
