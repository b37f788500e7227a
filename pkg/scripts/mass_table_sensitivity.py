"""Mass table under both M4 readings, several box sizes and an alternative F_pi.

Prints one line per (setting, case).  Reference totals: a 46.7, b 38, c 38.4, d 27.5.
"""
import argparse

from skyrmion_chaos.cli import mass_rows, parse_config

REFERENCE = {"a": 46.7, "b": 38.0, "c": 38.4, "d": 27.5}

ap = argparse.ArgumentParser()
ap.add_argument("--L", type=float, nargs="+", default=[16.0, 8.0, 24.0])
ap.add_argument("--F-pi", type=float, nargs="+", default=[108.0, 129.0])
args = ap.parse_args()

for reading in ("unity", "sin2"):
    for L in args.L:
        for F_pi in args.F_pi:
            rows, _ = mass_rows(parse_config(f"L = {L}\nN = {int(8 * L)}\nF_pi = {F_pi}"), reading)
            totals = {r[0]: r[5] for r in rows}
            order = "d-min" if all(totals["d"] < totals[c] for c in "abc") else "d-not-min"
            for case, k, variant, m2, m4, total in rows:
                print(f"{reading:5s} L={L:<4g} F_pi={F_pi:<5g} {case} k={k} {variant:9s} "
                      f"m2={m2:8.4f} m4={m4:8.4f} total={total:8.4f} "
                      f"rel={(total - REFERENCE[case]) / REFERENCE[case]:+.3f} {order}")
