"""Quantum Fisher information versus beam-splitter transmission.

Vacuum enters port 0 and a coherent state enters port 1.  The three
phase-shift placements give different QFIs; the table shows how each depends
on the first splitter's transmission |t|^2.
"""
import math

from gcsmetrology import AlgebraParams, build_coherent_state, moments, vacuum_moments
from gcsmetrology.errors import DegenerateInput
from gcsmetrology.fisher import qfi

m0 = vacuum_moments()
m1 = moments(build_coherent_state("su11", 1.0, AlgebraParams(0.5, 0.2, 0.1)))

print(f"{'|t|^2':>6} {'F_a':>10} {'F_b':>10} {'F_c':>10}")
for i in range(11):
    t2 = i / 10
    kappa = 2 * math.acos(math.sqrt(t2))
    try:
        fa = qfi("a", m0, m1, kappa)
    except DegenerateInput:
        fa = 0.0  # the splitter sends everything to one arm
    print(f"{t2:>6.2f} {fa:>10.5f} {qfi('b', m0, m1, kappa):>10.5f} {qfi('c', m0, m1, kappa):>10.5f}")
