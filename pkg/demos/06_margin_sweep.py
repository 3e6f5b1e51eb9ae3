"""Minimum conclusion margin as gamma moves across the threshold.

Below the threshold the forward construction produces functions that leave
the lemniscate (negative margins); at and above it the margin stays
positive and grows with gamma. Writes demo_output/sweep_t21.csv.
"""

from pathlib import Path

from lemni.criteria import CriterionParams
from lemni.harness import margin_sweep

table = margin_sweep("t21", CriterionParams(), [0.25, 0.5, 0.75, 1, 2, 4], 40, seed=7)
out = Path("demo_output")
out.mkdir(exist_ok=True)
(out / "sweep_t21.csv").write_text(table.to_csv())
for row in table.rows:
    print(f"gamma = {row['multiplier']:4g} x threshold = {row['gamma']:5.2f}: min margin {row['min_margin']:+.4f}")
