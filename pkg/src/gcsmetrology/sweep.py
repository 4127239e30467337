"""Evaluation of sensitivity and Fisher-information curves for a :class:`RunConfig`."""
from __future__ import annotations

import json
import math
from dataclasses import astuple, dataclass, fields, replace
from typing import Dict, Iterable, List, Optional

import numpy as np

from . import detection as det
from .algebra import AlgebraKind
from .config import RunConfig, kappa_from_transmission
from .errors import DegenerateInput, NoFiniteValue, Undefined
from .fisher import QfiScenario, qfi
from .optimize import DEFAULT_GRID, DEFAULT_TOL, optimize_phase
from .states import build_coherent_state, moments, vacuum_moments

__all__ = ["SweepRow", "CSV_HEADER", "sweep_values", "evaluate_row", "run_sweep", "format_rows",
           "optimize_scheme", "ratio_report"]

CSV_HEADER = "x,dphi_df,dphi_sing,dphi_hom_b,dphi_hom_c,qcrb_a,qcrb_b,qcrb_c,qfi_a,qfi_b,qfi_c"


@dataclass(frozen=True)
class SweepRow:
    x: float
    dphi_df: float
    dphi_sing: float
    dphi_hom_b: float
    dphi_hom_c: float
    qcrb_a: float
    qcrb_b: float
    qcrb_c: float
    qfi_a: float
    qfi_b: float
    qfi_c: float

    def bound_violations(self, slack: float = 1e-9) -> List[str]:
        """Names of finite ``dphi_*`` cells lying below their matching bound."""
        pairs = (("dphi_df", "qcrb_a"), ("dphi_sing", "qcrb_a"), ("dphi_hom_b", "qcrb_b"), ("dphi_hom_c", "qcrb_c"))
        out = []
        for d, q in pairs:
            dv, qv = getattr(self, d), getattr(self, q)
            if math.isfinite(dv) and math.isfinite(qv) and dv < qv - slack:
                out.append(d)
        return out


def sweep_values(cfg: RunConfig) -> np.ndarray:
    sw = cfg.sweep
    return np.linspace(sw.start, sw.stop, int(sw.steps))


def _state_for(cfg: RunConfig, zeta: Optional[complex] = None, kind=None):
    st = cfg.state
    return build_coherent_state(kind or st.kind, st.zeta if zeta is None else zeta, st.params, st.tail_tol)


def _safe_qfi(scenario, m1, kappa) -> float:
    try:
        return qfi(scenario, vacuum_moments(), m1, kappa)
    except DegenerateInput:
        return math.nan


def _bound(F: float) -> float:
    return 1.0 / math.sqrt(F) if F > 0 else math.inf


def evaluate_row(x: float, m1, kappa, kappa_p, hom_kappa, hom_kappa_p, phi, phi_l, eta, scenario="b") -> SweepRow:
    m0 = vacuum_moments()
    inten = det.InterferometerConfig(kappa, kappa_p, phi, scenario, phi_l, eta)
    hom_b = det.InterferometerConfig(hom_kappa, hom_kappa_p, phi, "b", phi_l, eta)
    hom_c = replace(hom_b, scenario=det.Scenario.C)
    fa = _safe_qfi(QfiScenario.A, m1, kappa)
    fb = _safe_qfi(QfiScenario.B, m1, hom_kappa)
    fc = _safe_qfi(QfiScenario.C, m1, hom_kappa)
    return SweepRow(
        x=float(x),
        dphi_df=det.sensitivity_difference(m0, m1, inten).delta_phi,
        dphi_sing=det.sensitivity_single(m0, m1, inten).delta_phi,
        dphi_hom_b=det.sensitivity_homodyne(m1, hom_b).delta_phi,
        dphi_hom_c=det.sensitivity_homodyne(m1, hom_c).delta_phi,
        qcrb_a=_bound(fa),
        qcrb_b=_bound(fb),
        qcrb_c=_bound(fc),
        qfi_a=fa,
        qfi_b=fb,
        qfi_c=fc,
    )


def run_sweep(cfg: RunConfig) -> List[SweepRow]:
    """One row per swept value, in sweep order.

    ``kappa`` and ``transmission`` sweeps move the first beam splitter of both
    the intensity and homodyne set-ups; ``zeta_abs`` keeps the phase of zeta.
    """
    it = cfg.interferometer
    var = cfg.sweep.variable
    m1_fixed = None if var == "zeta_abs" else moments(_state_for(cfg))
    rows = []
    for x in sweep_values(cfg):
        x = float(x)
        kappa, kappa_p = it.kappa, it.kappa_prime
        hk, hkp = it.hom_kappa, it.hom_kappa_prime
        phi, m1 = it.phi, m1_fixed
        if var == "phi":
            phi = x
        elif var == "kappa":
            kappa = hk = x
        elif var == "transmission":
            kappa = hk = kappa_from_transmission(x)
        else:
            zeta = x * np.exp(1j * np.angle(cfg.state.zeta))
            m1 = moments(_state_for(cfg, zeta))
        rows.append(evaluate_row(x, m1, kappa, kappa_p, hk, hkp, phi, it.phi_l_value, it.eta, it.scenario))
    return rows


def _cell(v: float) -> str:
    return format(v, ".17g") if math.isfinite(v) else ""


def _json_value(v: float):
    return v if math.isfinite(v) else None


def format_rows(rows: Iterable[SweepRow], fmt: str = "csv") -> str:
    rows = list(rows)
    if fmt == "csv":
        lines = [CSV_HEADER] + [",".join(_cell(v) for v in astuple(r)) for r in rows]
        return "\n".join(lines) + "\n"
    names = [f.name for f in fields(SweepRow)]
    doc = [{n: _json_value(getattr(r, n)) for n in names} for r in rows]
    return json.dumps(doc, indent=1) + "\n"


def _scheme_angles(cfg: RunConfig, scheme: det.Scheme):
    it = cfg.interferometer
    if scheme in (det.Scheme.HOMODYNE_B, det.Scheme.HOMODYNE_C):
        return it.hom_kappa, it.hom_kappa_prime
    return it.kappa, it.kappa_prime


def optimize_scheme(cfg: RunConfig, scheme, kind=None, n_grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL):
    """``(phi_opt, dphi_min)`` for one detection scheme.

    Raises
    ------
    NoFiniteValue
        The sensitivity is infinite at every grid phase.
    """
    scheme = det.Scheme.parse(scheme)
    m1 = moments(_state_for(cfg, kind=kind))
    m0 = vacuum_moments()
    kappa, kappa_p = _scheme_angles(cfg, scheme)
    it = cfg.interferometer
    # homodyne schemes fix their own placement; intensity schemes take the configured one
    base = det.InterferometerConfig(kappa, kappa_p, 0.0, it.scenario, it.phi_l_value, it.eta)

    def objective(phi: float) -> float:
        return det.sensitivity(scheme, m0, m1, base.with_phi(phi)).delta_phi

    return optimize_phase(objective, n_grid=n_grid, tol=tol)


def ratio_report(cfg: RunConfig, n_grid: int = DEFAULT_GRID) -> Dict[str, dict]:
    """Optimised sensitivities of two algebras and their ratio, per scheme."""
    num_kind, den_kind = (AlgebraKind.parse(k) for k in cfg.ratio_kinds)
    out = {}
    for scheme in det.Scheme:
        entry = {}
        for tag, kind in (("num", num_kind), ("den", den_kind)):
            try:
                phi, val = optimize_scheme(cfg, scheme, kind=kind, n_grid=n_grid)
            except NoFiniteValue:
                phi, val = math.nan, math.inf
            entry[f"phi_{tag}"], entry[f"dphi_{tag}"] = phi, val
        try:
            entry["ratio"] = det.performance_ratio(entry["dphi_num"], entry["dphi_den"])
        except Undefined:
            entry["ratio"] = math.inf
        out[scheme.value] = entry
    return out
