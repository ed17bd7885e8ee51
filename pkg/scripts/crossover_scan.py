"""Series, asymptotic and quadrature side by side over z in [0.5, 500].

Writes one CSV per (integral, fixed parameters, nu) into results/ and
prints the z beyond which the series is no longer trusted and beyond which
the asymptotic form stays within 10% and 1% of quadrature.

    python3 scripts/crossover_scan.py [--points 60] [--jobs 4]
"""

import argparse
import csv
import io
from pathlib import Path

from thermofn.cli import SweepSpec, run_sweep
from thermofn.config import load_config
from thermofn.quadrature import Kind

CASES = [
    (Kind.I1, {}),
    (Kind.I2, {"d": 5.0}),
    (Kind.I3, {"t": 1.0}),
    (Kind.I4, {"b": 0.1, "delta": 0.25}),
]


def onset(table, pred):
    """Smallest z from which ``pred`` holds for the rest of the sweep."""
    z = float("nan")
    for r in reversed(table):
        if not pred(r):
            break
        z = float(r["z"])
    return z


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=60)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(exist_ok=True)
    cfg = load_config()

    print(f"{'case':<28}{'series lost':>12}{'asym < 10%':>12}{'asym < 1%':>13}")
    for kind, fixed in CASES:
        for nu in (0, 1, 2):
            spec = SweepSpec(kind, {**fixed, "nu": nu}, "z", 0.5, 500.0, args.points, "log",
                             ("series", "asymptotic", "quadrature", "auto"))
            text = run_sweep(spec, 1e-6, cfg, args.jobs)
            tag = "_".join([kind.value, *(f"{k}{v:g}" for k, v in fixed.items()), f"nu{nu}"])
            (out / f"sweep_{tag}.csv").write_text(text)
            table = list(csv.DictReader(io.StringIO(text)))
            lost = onset(table, lambda r: r["series_trust"] != "reliable")

            def asym_within(eps):
                return onset(table, lambda r: r["dev_asymptotic_quadrature"] != ""
                             and float(r["dev_asymptotic_quadrature"]) < eps)

            print(f"{tag:<28}{lost:>12.4g}{asym_within(1e-1):>12.4g}{asym_within(1e-2):>13.4g}")


if __name__ == "__main__":
    main()
