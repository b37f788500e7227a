"""Write every data file needed to redraw the figures and the mass table.

    python scripts/run_figures.py [out_dir]
"""
import sys
from pathlib import Path

from skyrmion_chaos.cli import main

out = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
runs = [
    ["mass-table", "--out", str(out / "mass_table")],
    ["mass-table", "--m4-reading", "sin2", "--out", str(out / "mass_table_sin2")],
    ["compare-kink", "--out", str(out / "kink")],
    ["evolve", "--model", "quartic", "--out", str(out / "quartic")],
    ["evolve", "--model", "sixth", "--out", str(out / "sixth")],
]
for argv in runs:
    code = main(argv + ["-v"])
    if code:
        raise SystemExit(code)
