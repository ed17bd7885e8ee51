"""Re-derive the crossover constants and compare them with the shipped defaults.

    python3 scripts/calibrate.py [--tol 1e-6]

Writes results/calibrated.cfg (loadable with --config or THERMOFN_CONFIG)
and results/calibration_report.csv with every scanned point.
"""

import argparse
import csv
import time
from pathlib import Path

from thermofn.calibration import calibrate
from thermofn.config import Config, write_config


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=1e-6)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(exist_ok=True)

    start = time.perf_counter()
    cfg, rows = calibrate(Config(), args.tol)
    print(f"calibrated {len(rows)} points in {time.perf_counter() - start:.1f} s")
    write_config(cfg, out / "calibrated.cfg")
    with open(out / "calibration_report.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "nu", "fixed", "z", "series_error", "series_accepted", "asym_error"])
        for r in rows:
            w.writerow([r.kind, r.nu, r.fixed, r.z, r.series_error, int(r.series_accepted), r.asym_error])

    default = Config()
    for table in ("series_zmax", "asym_c"):
        new, old = getattr(cfg, table), getattr(default, table)
        for key in sorted(new):
            flag = "" if new[key] == old.get(key) else "   (differs from default)"
            print(f"{table}.{key:<8} {new[key]:>8g}   default {old.get(key, float('nan')):>8g}{flag}")


if __name__ == "__main__":
    main()
