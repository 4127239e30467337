"""Phase sensitivity of a Mach-Zehnder interferometer under three read-out schemes.

Outputs 4 and 5 of the second beam splitter are linear in the input modes,
``b4 = T00 b0 + T01 b1`` and ``b5 = T10 b0 + T11 b1``.  Intensity observables
are bilinear in ``b0, b1`` and their moments on a product input follow from
single-mode moments only.  The sensitivity of an observable ``S`` is

    dphi = sqrt(Var S) / |d<S>/dphi|

and is reported as ``+inf`` where the slope vanishes.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import InvalidEfficiency, Undefined
from .states import ModeMoments, vacuum_moments

_SLOPE_RTOL = 1e-12

__all__ = [
    "Scenario",
    "Scheme",
    "InterferometerConfig",
    "DifferenceCoeffs",
    "SingleModeCoeffs",
    "SensitivityResult",
    "transfer_matrix",
    "difference_coeffs",
    "single_mode_coeffs",
    "difference_moments",
    "single_mode_moments",
    "homodyne_mean",
    "homodyne_variance",
    "homodyne_slope_vector",
    "auto_phi_l",
    "sensitivity_difference",
    "sensitivity_single",
    "sensitivity_homodyne",
    "apply_detection_loss",
    "performance_ratio",
]


class Scenario(str, enum.Enum):
    """Phase placement: B puts ``phi`` on arm 3, C splits it as ``+phi/2`` / ``-phi/2``."""

    B = "b"
    C = "c"

    @classmethod
    def parse(cls, value) -> "Scenario":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class Scheme(str, enum.Enum):
    DIFFERENCE = "difference"
    SINGLE = "single"
    HOMODYNE_B = "homodyne_b"
    HOMODYNE_C = "homodyne_c"

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        aliases = {"df": "difference", "diff": "difference", "sing": "single", "hom_b": "homodyne_b",
                   "hom_c": "homodyne_c"}
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class InterferometerConfig:
    """Beam-splitter angles, internal phase, local-oscillator phase and detector efficiency.

    ``phi_l=None`` selects the local-oscillator phase that maximises the
    homodyne slope.
    """

    kappa: float
    kappa_p: float
    phi: float
    scenario: Scenario = Scenario.B
    phi_l: Optional[float] = None
    eta: float = 1.0

    def __post_init__(self):
        for name in ("kappa", "kappa_p"):
            v = getattr(self, name)
            if not 0.0 <= v <= math.pi:
                raise ValueError(f"{name} must lie in [0, pi], got {v!r}")
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        if not 0.0 < self.eta <= 1.0:
            raise InvalidEfficiency(f"eta must lie in (0, 1], got {self.eta!r}")
        object.__setattr__(self, "scenario", Scenario.parse(self.scenario))

    def with_phi(self, phi: float) -> "InterferometerConfig":
        return replace(self, phi=phi)


@dataclass(frozen=True)
class DifferenceCoeffs:
    a_d: float
    c_d: complex


@dataclass(frozen=True)
class SingleModeCoeffs:
    a0: float
    a1: float
    a01: complex


@dataclass(frozen=True)
class SensitivityResult:
    scheme: Scheme
    delta_phi: float
    numerator_sd: float
    slope: float
    eta: float = 1.0
    variance: float = math.nan
    loss_weight: float = 0.0
    phi_l: Optional[float] = None

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.delta_phi)


def _half_angles(cfg: InterferometerConfig):
    return (
        math.cos(cfg.kappa / 2),
        math.sin(cfg.kappa / 2),
        math.cos(cfg.kappa_p / 2),
        math.sin(cfg.kappa_p / 2),
    )


def transfer_matrix(cfg: InterferometerConfig):
    """``(T, dT/dphi)`` mapping ``(b0, b1)`` to ``(b4, b5)``, scenario phase included."""
    c, s, cp, sp = _half_angles(cfg)
    phi = cfg.phi
    bs1 = np.array([[c, 1j * s], [1j * s, c]])
    bs2 = np.array([[cp, 1j * sp], [1j * sp, cp]])
    if cfg.scenario is Scenario.B:
        ph, dph = np.array([1.0, cmath.exp(-1j * phi)]), np.array([0.0, -1j * cmath.exp(-1j * phi)])
    else:
        ph = np.array([cmath.exp(0.5j * phi), cmath.exp(-0.5j * phi)])
        dph = np.array([0.5j * ph[0], -0.5j * ph[1]])
    T = bs2 @ np.diag(ph) @ bs1
    dT = bs2 @ np.diag(dph) @ bs1
    return T, dT


def _homodyne_t(cfg: InterferometerConfig):
    """First row of the transfer matrix and its phase derivative, in closed form."""
    c, s, cp, sp = _half_angles(cfg)
    phi = cfg.phi
    if cfg.scenario is Scenario.B:
        e = cmath.exp(-1j * phi)
        t0 = c * cp - s * sp * e
        t1 = 1j * (c * sp * e + s * cp)
        d0 = 1j * s * sp * e
        d1 = c * sp * e
    else:
        ep, em = cmath.exp(0.5j * phi), cmath.exp(-0.5j * phi)
        t0 = c * cp * ep - s * sp * em
        t1 = 1j * (c * sp * em + s * cp * ep)
        d0 = 0.5j * (c * cp * ep + s * sp * em)
        d1 = -0.5 * (s * cp * ep - c * sp * em)
    return t0, t1, d0, d1


def difference_coeffs(cfg: InterferometerConfig) -> DifferenceCoeffs:
    """``N_d = A_d (m0 - m1) + conj(C_d) b0^dag b1 + C_d b1^dag b0``."""
    k, kp, phi = cfg.kappa, cfg.kappa_p, cfg.phi
    sk, skp = abs(math.sin(k)), abs(math.sin(kp))
    a_d = 1 - 2 * math.sin((k + kp) / 2) ** 2 + math.sin(k) * math.sin(kp) * (1 - math.cos(phi))
    c_d = complex(
        skp * math.sin(phi),
        sk * (1 - 2 * math.cos(kp / 2) ** 2) + (1 - 2 * math.cos(k / 2) ** 2) * skp * math.cos(phi),
    )
    return DifferenceCoeffs(a_d, c_d)


def _difference_coeffs_dphi(cfg: InterferometerConfig):
    k, kp, phi = cfg.kappa, cfg.kappa_p, cfg.phi
    skp = abs(math.sin(kp))
    da = math.sin(k) * math.sin(kp) * math.sin(phi)
    dc = complex(skp * math.cos(phi), -(1 - 2 * math.cos(k / 2) ** 2) * skp * math.sin(phi))
    return da, dc


def single_mode_coeffs(cfg: InterferometerConfig) -> SingleModeCoeffs:
    """``m4 = A0 m0 + A1 m1 + A01 b0^dag b1 + conj(A01) b1^dag b0``."""
    c, s, cp, sp = _half_angles(cfg)
    k, kp, phi = cfg.kappa, cfg.kappa_p, cfg.phi
    cross = 0.5 * math.sin(k) * math.sin(kp) * math.cos(phi)
    a0 = (c * cp) ** 2 + (s * sp) ** 2 - cross
    a1 = (c * sp) ** 2 + (s * cp) ** 2 + cross
    a01 = 0.5j * (
        abs(math.sin(k)) * (2 * cp**2 - 1)
        + abs(math.sin(kp)) * (c**2 * cmath.exp(-1j * phi) - s**2 * cmath.exp(1j * phi))
    )
    return SingleModeCoeffs(a0, a1, a01)


def _single_mode_coeffs_dphi(cfg: InterferometerConfig):
    c, s, _, _ = _half_angles(cfg)
    k, kp, phi = cfg.kappa, cfg.kappa_p, cfg.phi
    da0 = 0.5 * math.sin(k) * math.sin(kp) * math.sin(phi)
    da01 = 0.5 * abs(math.sin(kp)) * (c**2 * cmath.exp(-1j * phi) + s**2 * cmath.exp(1j * phi))
    return da0, -da0, da01


def _bilinear_mean(w0, w1, K, m0: ModeMoments, m1: ModeMoments) -> float:
    """``<w0 m0 + w1 m1 + K b0^dag b1 + h.c.>`` on a product state."""
    return w0 * m0.mean_n + w1 * m1.mean_n + 2 * (K * m0.exp_b.conjugate() * m1.exp_b).real


def _bilinear_variance(w0, w1, K, m0: ModeMoments, m1: ModeMoments) -> float:
    """Variance of ``w0 m0 + w1 m1 + K b0^dag b1 + h.c.`` on a product state."""
    b0, b1 = m0.exp_b, m1.exp_b
    n0, n1 = m0.mean_n, m1.mean_n
    quad = m0.exp_b2.conjugate() * m1.exp_b2 - b0.conjugate() ** 2 * b1**2
    # <m0 b0^dag> + <b0^dag m0> - 2<m0><b0^dag>, and the mode-1 analogue
    x0 = m0.exp_b_n.conjugate() + m0.exp_bdag_n - 2 * n0 * b0.conjugate()
    x1 = m1.exp_b_n + m1.exp_nb - 2 * n1 * b1
    return float(
        w0**2 * m0.var_n
        + w1**2 * m1.var_n
        + 2 * (K**2 * quad).real
        + abs(K) ** 2 * (n0 + n1 + 2 * n0 * n1 - 2 * abs(b0) ** 2 * abs(b1) ** 2)
        + 2 * w0 * (K * x0 * b1).real
        + 2 * w1 * (K * b0.conjugate() * x1).real
    )


def difference_moments(m0: ModeMoments, m1: ModeMoments, cfg: InterferometerConfig):
    """``(<N_d>, Var N_d, d<N_d>/dphi, <m4> + <m5>)``."""
    co = difference_coeffs(cfg)
    K = co.c_d.conjugate()
    da, dc = _difference_coeffs_dphi(cfg)
    mean = _bilinear_mean(co.a_d, -co.a_d, K, m0, m1)
    var = _bilinear_variance(co.a_d, -co.a_d, K, m0, m1)
    slope = _bilinear_mean(da, -da, dc.conjugate(), m0, m1)
    return mean, var, slope, m0.mean_n + m1.mean_n


def single_mode_moments(m0: ModeMoments, m1: ModeMoments, cfg: InterferometerConfig):
    """``(<m4>, Var m4, d<m4>/dphi)``."""
    co = single_mode_coeffs(cfg)
    da0, da1, da01 = _single_mode_coeffs_dphi(cfg)
    mean = _bilinear_mean(co.a0, co.a1, co.a01, m0, m1)
    var = _bilinear_variance(co.a0, co.a1, co.a01, m0, m1)
    slope = _bilinear_mean(da0, da1, da01, m0, m1)
    return mean, var, slope


def homodyne_slope_vector(m0: ModeMoments, m1: ModeMoments, cfg: InterferometerConfig) -> complex:
    """``dT00/dphi <b0> + dT01/dphi <b1>``; the slope is ``|Re{e^{-i phi_L} (.)}|``."""
    _, _, d0, d1 = _homodyne_t(cfg)
    return d0 * m0.exp_b + d1 * m1.exp_b


def auto_phi_l(m0: ModeMoments, m1: ModeMoments, cfg: InterferometerConfig) -> float:
    """Local-oscillator phase that maximises the quadrature slope."""
    v = homodyne_slope_vector(m0, m1, cfg)
    return cmath.phase(v) if v != 0 else 0.0


def _resolve_phi_l(m0, m1, cfg) -> float:
    return auto_phi_l(m0, m1, cfg) if cfg.phi_l is None else float(cfg.phi_l)


def homodyne_mean(m1: ModeMoments, cfg: InterferometerConfig, m0: Optional[ModeMoments] = None) -> float:
    m0 = vacuum_moments() if m0 is None else m0
    t0, t1, _, _ = _homodyne_t(cfg)
    rot = cmath.exp(-1j * _resolve_phi_l(m0, m1, cfg))
    return float((rot * (t0 * m0.exp_b + t1 * m1.exp_b)).real)


def homodyne_variance(m1: ModeMoments, cfg: InterferometerConfig, m0: Optional[ModeMoments] = None) -> float:
    """Variance of ``X = Re{e^{-i phi_L} b4}``.

    ``1/4 + 2 Re{A^2 Var b0 + B^2 Var b1} + 2|A|^2 (<m0> - |<b0>|^2)
    + 2|B|^2 (<m1> - |<b1>|^2)`` with ``A = e^{-i phi_L} T00 / 2`` and
    ``B = e^{-i phi_L} T01 / 2``.
    """
    m0 = vacuum_moments() if m0 is None else m0
    t0, t1, _, _ = _homodyne_t(cfg)
    rot = 0.5 * cmath.exp(-1j * _resolve_phi_l(m0, m1, cfg))
    A, B = rot * t0, rot * t1
    return float(
        0.25
        + 2 * (A**2 * m0.var_b + B**2 * m1.var_b).real
        + 2 * abs(A) ** 2 * (m0.mean_n - abs(m0.exp_b) ** 2)
        + 2 * abs(B) ** 2 * (m1.mean_n - abs(m1.exp_b) ** 2)
    )


def _result(scheme, var, slope, weight, eta, phi_l=None, scale=0.0) -> SensitivityResult:
    var = max(var, 0.0)
    total = var + (1.0 - eta) / eta * weight
    sd = math.sqrt(max(total, 0.0))
    slope = abs(slope)
    # slopes at rounding level of the signal (e.g. sin(pi) != 0) count as vanishing
    if slope <= _SLOPE_RTOL * scale:
        slope = 0.0
    dphi = sd / slope if slope > 0 else math.inf
    return SensitivityResult(Scheme(scheme), dphi, sd, slope, eta, var, weight, phi_l)


def sensitivity_difference(m0: ModeMoments, m1: ModeMoments, cfg: InterferometerConfig) -> SensitivityResult:
    """Difference-intensity detection ``N_d = m4 - m5``; independent of the scenario."""
    _, var, slope, total_n = difference_moments(m0, m1, cfg)
    return _result(Scheme.DIFFERENCE, var, slope, total_n, cfg.eta, scale=_intensity_scale(m0, m1))


def sensitivity_single(m0: ModeMoments, m1: ModeMoments, cfg: InterferometerConfig) -> SensitivityResult:
    """Intensity detection at output 4 only."""
    mean, var, slope = single_mode_moments(m0, m1, cfg)
    return _result(Scheme.SINGLE, var, slope, max(mean, 0.0), cfg.eta, scale=_intensity_scale(m0, m1))


def sensitivity_homodyne(
    m1: ModeMoments, cfg: InterferometerConfig, m0: Optional[ModeMoments] = None
) -> SensitivityResult:
    """Balanced homodyne detection of output 4; the scheme follows ``cfg.scenario``."""
    m0 = vacuum_moments() if m0 is None else m0
    phi_l = _resolve_phi_l(m0, m1, cfg)
    fixed = replace(cfg, phi_l=phi_l)
    var = homodyne_variance(m1, fixed, m0)
    slope = (cmath.exp(-1j * phi_l) * homodyne_slope_vector(m0, m1, cfg)).real
    scheme = Scheme.HOMODYNE_B if cfg.scenario is Scenario.B else Scheme.HOMODYNE_C
    return _result(scheme, var, slope, 0.25, cfg.eta, phi_l, scale=abs(m0.exp_b) + abs(m1.exp_b))


def apply_detection_loss(result: SensitivityResult, eta: float) -> SensitivityResult:
    """Re-evaluate a loss-free result for detector efficiency ``eta``.

    The loss enters as extra variance ``(1 - eta)/eta * W`` where ``W`` is the
    mean detected photon number (intensity schemes) or ``1/4`` (homodyne).
    """
    if not 0.0 < eta <= 1.0:
        raise InvalidEfficiency(f"eta must lie in (0, 1], got {eta!r}")
    if result.eta != 1.0:
        raise ValueError("apply_detection_loss expects a loss-free result")
    return _result(result.scheme, result.variance, result.slope, result.loss_weight, eta, result.phi_l)


def _intensity_scale(m0: ModeMoments, m1: ModeMoments) -> float:
    return m0.mean_n + m1.mean_n + 2 * abs(m0.exp_b) * abs(m1.exp_b)


def performance_ratio(sens_gha, sens_su) -> float:
    """``R = dphi_GHA / dphi_SU11``; accepts floats or :class:`SensitivityResult`."""
    x = sens_gha.delta_phi if isinstance(sens_gha, SensitivityResult) else float(sens_gha)
    y = sens_su.delta_phi if isinstance(sens_su, SensitivityResult) else float(sens_su)
    if not (math.isfinite(x) and math.isfinite(y)) or y <= 0:
        raise Undefined(f"performance ratio undefined for dphi_gha={x!r}, dphi_su={y!r}")
    return x / y


def sensitivity(scheme, m0: ModeMoments, m1: ModeMoments, cfg: InterferometerConfig) -> SensitivityResult:
    """Dispatch on :class:`Scheme`; homodyne schemes override ``cfg.scenario``."""
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.DIFFERENCE:
        return sensitivity_difference(m0, m1, cfg)
    if scheme is Scheme.SINGLE:
        return sensitivity_single(m0, m1, cfg)
    sc = Scenario.B if scheme is Scheme.HOMODYNE_B else Scenario.C
    return sensitivity_homodyne(m1, replace(cfg, scenario=sc), m0)


def closed_form_difference(m1: ModeMoments, cfg: InterferometerConfig) -> float:
    """Vacuum-in-mode-0 reduction ``sqrt(Var N_d) / (sin k sin k' |sin phi <m1>|)``."""
    _, var, _, _ = difference_moments(vacuum_moments(), m1, cfg)
    den = math.sin(cfg.kappa) * math.sin(cfg.kappa_p) * abs(math.sin(cfg.phi) * m1.mean_n)
    return math.sqrt(var) / den if den > 0 else math.inf


def closed_form_single(m1: ModeMoments, cfg: InterferometerConfig) -> float:
    """Vacuum-in-mode-0 reduction ``2 sqrt(Var m4) / (sin k sin k' |sin phi <m1>|)``."""
    _, var, _ = single_mode_moments(vacuum_moments(), m1, cfg)
    den = math.sin(cfg.kappa) * math.sin(cfg.kappa_p) * abs(math.sin(cfg.phi) * m1.mean_n)
    return 2 * math.sqrt(var) / den if den > 0 else math.inf
