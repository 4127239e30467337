"""Photon statistics of generalized coherent states.

Builds the GHA and su(1,1) coherent states for a few values of zeta and prints
mean photon number, variance and the Mandel Q parameter.  With a=0.5, d=0.2,
e=0.1 the GHA family reduces to Glauber states (Q = 0).
"""
from gcsmetrology import AlgebraParams, build_coherent_state, moments

params = AlgebraParams(a=0.5, d=0.2, e=0.1)

print(f"{'kind':>5} {'zeta':>5} {'<n>':>10} {'Var n':>10} {'Q':>8} {'cutoff':>6}")
for kind in ("gha", "su11"):
    for zeta in (0.5, 1.0, 2.0):
        state = build_coherent_state(kind, zeta, params)
        mm = moments(state)
        q = (mm.var_n - mm.mean_n) / mm.mean_n
        print(f"{kind:>5} {zeta:>5.1f} {mm.mean_n:>10.6f} {mm.var_n:>10.6f} {q:>8.4f} {state.cutoff:>6d}")
