"""Regenerating the data behind the energy and power figures.

Each panel becomes a CSV table in normalised units.  The same tables come
out of ``pulsed-battery figure --figure all --out <dir>``.

Run with ``python demos/04_figure_data.py [output-dir]``.
"""
# %%
import sys
from pathlib import Path

from pulsed_battery.cli import write_csv
from pulsed_battery.figures import FIGURE_IDS, figure_table

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figure-data")
out.mkdir(parents=True, exist_ok=True)

for fid in FIGURE_IDS:
    header, rows = figure_table(fid)
    with open(out / f"{fid}.csv", "w", newline="") as fh:
        write_csv(header, rows, fh)
    print(f"{fid}: {len(rows)} rows, columns {header}")

# %%
# Spot checks against the headline numbers.
header, rows = figure_table("fig2b")
print("t_E * gamma at the EP:", next(r[1] for r in rows if r[0] == 0.25))
header, rows = figure_table("fig3b")
print("weak-coupling t_Pinst * gamma at g/gamma = 0.01:", rows[0][2])
header, rows = figure_table("fig4c")
print("P(t_P) / (omega_b Omega^2 g) at g/gamma = 100:", rows[-1][1] / rows[-1][0])
