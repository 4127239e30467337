"""Phase sensitivity of the four detection schemes against the QCRB.

Runs the bundled ``fig2_gha`` configuration and prints every tenth row.
Blank cells are phases where the signal slope vanishes.
"""
import math

from gcsmetrology.config import load_config, shipped_config
from gcsmetrology.sweep import run_sweep

rows = run_sweep(load_config(shipped_config("fig2_gha")))


def cell(v):
    return f"{v:>9.4f}" if math.isfinite(v) else f"{'-':>9}"


print(f"{'phi':>6}" + "".join(f"{h:>9}" for h in ("diff", "single", "hom_b", "hom_c", "qcrb_a", "qcrb_b")))
for r in rows[::10]:
    vals = (r.dphi_df, r.dphi_sing, r.dphi_hom_b, r.dphi_hom_c, r.qcrb_a, r.qcrb_b)
    print(f"{r.x:>6.3f}" + "".join(cell(v) for v in vals))
