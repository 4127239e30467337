"""Which algebra gives the better optimised sensitivity?

For each detection scheme the working phase is optimised separately for the
GHA and su(1,1) states, and the ratio of the minima is reported.  A ratio
below 1 favours the GHA state.
"""
from gcsmetrology.config import load_config, shipped_config
from gcsmetrology.sweep import ratio_report

for name in ("fig4_a05", "fig4_a07"):
    print(name)
    for scheme, e in ratio_report(load_config(shipped_config(name))).items():
        print(f"  {scheme:<11} GHA {e['dphi_num']:.5f}  su11 {e['dphi_den']:.5f}  ratio {e['ratio']:.4f}")
