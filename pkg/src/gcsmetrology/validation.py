"""Analytic-versus-oracle comparison over a grid of interferometer settings."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

from . import detection as det
from . import fisher
from . import oracle
from .algebra import AlgebraKind, AlgebraParams
from .states import build_coherent_state, moments, vacuum_moments

__all__ = ["ValidationReport", "run_validation", "DEFAULT_ANGLES", "DEFAULT_PHASES", "DEFAULT_TOL"]

DEFAULT_ANGLES = (math.pi / 4, math.pi / 2, 3 * math.pi / 4)
DEFAULT_PHASES = (0.3, 1.0, 2.0)
DEFAULT_TOL = 1e-8
QUANTITIES = ("mean_nd", "var_nd", "mean_m4", "var_m4", "mean_x", "var_x", "x_conjugation", "var_x_conjugation",
              "qfi_b", "qfi_c", "f_ss", "f_dd", "f_sd")


@dataclass(frozen=True)
class ValidationReport:
    worst: Dict[str, float]
    where: Dict[str, str]
    tol: float
    n_points: int

    @property
    def passed(self) -> bool:
        return all(v < self.tol for v in self.worst.values())

    @property
    def worst_offender(self) -> str:
        return max(self.worst, key=self.worst.get)

    def table(self) -> str:
        lines = [f"{'quantity':<18} {'max |delta|':>12}  status  worst point"]
        for q in QUANTITIES:
            v = self.worst[q]
            lines.append(f"{q:<18} {v:12.3e}  {'ok' if v < self.tol else 'FAIL':<6}  {self.where[q]}")
        verdict = "PASS" if self.passed else f"FAIL (worst offender: {self.worst_offender})"
        lines.append(f"{self.n_points} grid points, tolerance {self.tol:g}: {verdict}")
        return "\n".join(lines)


def run_validation(
    zeta: complex = 1.0,
    params: Optional[AlgebraParams] = None,
    kinds: Iterable = (AlgebraKind.GHA, AlgebraKind.SU11),
    angles: Sequence[float] = DEFAULT_ANGLES,
    phases: Sequence[float] = DEFAULT_PHASES,
    scenarios: Sequence[str] = ("b", "c"),
    tail_tol: float = 1e-14,
    cutoff: Optional[int] = None,
    tol: float = DEFAULT_TOL,
) -> ValidationReport:
    """Compare every closed-form observable with the Fock-space simulation.

    Raises
    ------
    CutoffTooSmall
        ``cutoff`` is below the truncation of an input state.
    """
    params = params or AlgebraParams(0.5, 0.2, 0.1)
    worst = {q: 0.0 for q in QUANTITIES}
    where = {q: "-" for q in QUANTITIES}
    m0 = vacuum_moments()
    n = 0
    for kind in kinds:
        kind = AlgebraKind.parse(kind)
        state = build_coherent_state(kind, zeta, params, tail_tol)
        m1 = moments(state)
        two = oracle.embed_input(state, cutoff)
        for k, kp, phi, sc in itertools.product(angles, angles, phases, scenarios):
            cfg = det.InterferometerConfig(k, kp, phi, sc)
            phi_l = det.auto_phi_l(m0, m1, cfg)
            cfg = det.InterferometerConfig(k, kp, phi, sc, phi_l)
            obs = oracle.observe(two, k, kp, phi, sc, phi_l)
            mean_nd, var_nd, _, _ = det.difference_moments(m0, m1, cfg)
            mean_m4, var_m4, _ = det.single_mode_moments(m0, m1, cfg)
            el = fisher.qfim_elements(m0, m1, k)
            pairs = {
                "mean_nd": (mean_nd, obs.mean_nd),
                "var_nd": (var_nd, obs.var_nd),
                "mean_m4": (mean_m4, obs.mean_m4),
                "var_m4": (var_m4, obs.var_m4),
                "mean_x": (det.homodyne_mean(m1, cfg), obs.mean_x),
                "var_x": (det.homodyne_variance(m1, cfg), obs.var_x),
                "x_conjugation": (obs.mean_x_conj, obs.mean_x),
                "var_x_conjugation": (obs.var_x_conj, obs.var_x),
                "qfi_b": (fisher.qfi("b", m0, m1, k), obs.qfi_b),
                "qfi_c": (fisher.qfi("c", m0, m1, k), obs.qfi_c),
                "f_ss": (el.f_ss, obs.f_ss),
                "f_dd": (el.f_dd, obs.f_dd),
                "f_sd": (el.f_sd, obs.f_sd),
            }
            label = f"{kind.value} k={k:.4f} k'={kp:.4f} phi={phi:g} scen={sc}"
            for q, (a, b) in pairs.items():
                delta = abs(a - b)
                if not delta <= worst[q]:
                    worst[q], where[q] = delta, label
            n += 1
    return ValidationReport(worst, where, tol, n)
