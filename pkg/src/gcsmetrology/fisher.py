"""Quantum Fisher information for a Mach-Zehnder interferometer with product inputs.

Modes 0 and 1 enter the first beam splitter, whose outputs 2 and 3 obey

    b2 = cos(kappa/2) b0 + i sin(kappa/2) b1
    b3 = i sin(kappa/2) b0 + cos(kappa/2) b1.

Three phase models are covered: (A) the phase difference of two independent
arm phases, with the phase sum as a nuisance parameter; (B) a single phase on
arm 3; (C) a symmetric split ``+phi/2`` / ``-phi/2``.  Every quantity is
evaluated from :class:`~gcsmetrology.states.ModeMoments` only.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateInput
from .states import ModeMoments, vacuum_moments

__all__ = [
    "BeamSplitterAngle",
    "QfimElements",
    "QfiScenario",
    "qfim_elements",
    "qfi",
    "qfi_b_expanded",
    "qfi_specialized",
    "qcrb",
]

_IDENTITY_TOL = 1e-10


class QfiScenario(str, enum.Enum):
    A = "a"
    B = "b"
    C = "c"

    @classmethod
    def parse(cls, value) -> "QfiScenario":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class BeamSplitterAngle:
    """Mixing angle with ``t = cos(kappa/2)`` and ``r = i sin(kappa/2)``."""

    kappa: float

    def __post_init__(self):
        if not 0.0 <= self.kappa <= math.pi:
            raise ValueError(f"kappa must lie in [0, pi], got {self.kappa!r}")

    @classmethod
    def from_transmission(cls, transmission: float) -> "BeamSplitterAngle":
        """Build from the intensity transmission ``|t|^2``."""
        if not 0.0 <= transmission <= 1.0:
            raise ValueError(f"transmission must lie in [0, 1], got {transmission!r}")
        return cls(2.0 * math.acos(math.sqrt(transmission)))

    @property
    def t(self) -> complex:
        return complex(math.cos(self.kappa / 2))

    @property
    def r(self) -> complex:
        return 1j * math.sin(self.kappa / 2)

    @property
    def transmission(self) -> float:
        return math.cos(self.kappa / 2) ** 2


def _angle(bs) -> BeamSplitterAngle:
    return bs if isinstance(bs, BeamSplitterAngle) else BeamSplitterAngle(float(bs))


@dataclass(frozen=True)
class QfimElements:
    f_ss: float
    f_dd: float
    f_sd: float


def _mixed_terms(m0: ModeMoments, m1: ModeMoments):
    """Cross-mode combinations shared by the closed forms."""
    b0, b1 = m0.exp_b, m1.exp_b
    n0, n1 = m0.mean_n, m1.mean_n
    # <m0 b0> - <m0><b0>, <m1 b1> - <m1><b1>
    g0 = m0.exp_nb - n0 * b0
    g1 = m1.exp_nb - n1 * b1
    pair = n0 * n1 - abs(b0) ** 2 * abs(b1) ** 2
    # Re{<(b0^dag)^2><b1^2> - <b0^dag>^2<b1>^2}
    quad = (m0.exp_b2.conjugate() * m1.exp_b2 - b0.conjugate() ** 2 * b1**2).real
    return b0, b1, n0, n1, g0, g1, pair, quad


def qfim_elements(m0: ModeMoments, m1: ModeMoments, bs) -> QfimElements:
    """Entries of the 2x2 QFIM in the (phase sum, phase difference) basis.

    ``f_ss = Var(m2 + m3)``, ``f_dd = Var(m2 - m3)`` and
    ``f_sd = Cov(m2 + m3, m2 - m3)`` (symmetrised), written in input moments.
    """
    kappa = _angle(bs).kappa
    ck, sk = math.cos(kappa), abs(math.sin(kappa))
    b0, b1, n0, n1, g0, g1, pair, quad = _mixed_terms(m0, m1)
    v0, v1 = m0.var_n, m1.var_n

    f_ss = v0 + v1
    f_dd = (
        ck**2 * (v0 + v1)
        + 2 * sk**2 * (pair - quad)
        + sk**2 * (n0 + n1)
        - 4 * sk * ck * (g0.conjugate() * b1 + b0 * g1.conjugate()).imag
    )
    f_sd = ck * (v0 - v1) + 2 * sk * (b0 * b1.conjugate() + g0 * b1.conjugate() + b0 * g1.conjugate()).imag
    return QfimElements(float(f_ss), float(f_dd), float(f_sd))


def qfi_b_expanded(m0: ModeMoments, m1: ModeMoments, bs) -> float:
    """Single-arm QFI ``4 Var(m3)`` expanded in input moments."""
    kappa = _angle(bs).kappa
    c2, s2 = math.cos(kappa / 2) ** 2, math.sin(kappa / 2) ** 2
    sin_k = math.sin(kappa)
    sk = abs(sin_k)
    b0, b1, n0, n1, g0, g1, pair, quad = _mixed_terms(m0, m1)
    return float(
        4 * s2**2 * m0.var_n
        + 4 * c2**2 * m1.var_n
        + sk**2 * (n0 + n1 + 2 * pair)
        - 2 * sk**2 * quad
        - 4 * sin_k * (b0 * b1.conjugate()).imag
        - 8 * sk * s2 * (g0 * b1.conjugate()).imag
        - 8 * sk * c2 * (b0 * g1.conjugate()).imag
    )


def _qfi_c(m0: ModeMoments, m1: ModeMoments, kappa: float) -> float:
    """``Var(m2) + Var(m3)`` expanded in input moments."""
    c2, s2 = math.cos(kappa / 2) ** 2, math.sin(kappa / 2) ** 2
    sin_k, cos_k = math.sin(kappa), math.cos(kappa)
    b0, b1, n0, n1, g0, g1, pair, quad = _mixed_terms(m0, m1)
    cross = 1j * (g0.conjugate() * b1 - b0.conjugate() * g1)
    return float(
        (c2**2 + s2**2) * (m0.var_n + m1.var_n)
        + 0.5 * sin_k**2 * (n0 + n1 + 2 * pair)
        - sin_k**2 * quad
        + 2 * sin_k * cos_k * cross.real
    )


def qfi(scenario, m0: ModeMoments, m1: ModeMoments, bs) -> float:
    """Scenario QFI.

    A: ``f_dd - f_sd^2 / f_ss``; B: ``4 Var(m3)``, cross-checked against
    ``f_dd + f_ss - 2 f_sd``; C: ``Var(m2) + Var(m3)``.

    Raises
    ------
    DegenerateInput
        Scenario A with ``f_ss == 0``.
    """
    scenario = QfiScenario.parse(scenario)
    kappa = _angle(bs).kappa
    if scenario is QfiScenario.A:
        el = qfim_elements(m0, m1, kappa)
        if el.f_ss <= 0:
            raise DegenerateInput("two-parameter QFI undefined: phase-sum variance f_ss is zero")
        return el.f_dd - el.f_sd**2 / el.f_ss
    if scenario is QfiScenario.B:
        value = qfi_b_expanded(m0, m1, kappa)
        el = qfim_elements(m0, m1, kappa)
        via_qfim = el.f_dd + el.f_ss - 2 * el.f_sd
        if abs(value - via_qfim) > _IDENTITY_TOL * max(1.0, abs(value)):
            raise ArithmeticError(f"F_b mismatch: expanded {value!r} vs QFIM {via_qfim!r}")
        return value
    return _qfi_c(m0, m1, kappa)


def qfi_specialized(scenario, m1: ModeMoments, bs) -> float:
    """Closed forms for a vacuum in mode 0."""
    scenario = QfiScenario.parse(scenario)
    kappa = _angle(bs).kappa
    c4 = math.cos(kappa / 2) ** 4
    s4 = math.sin(kappa / 2) ** 4
    sin2 = math.sin(kappa) ** 2
    if scenario is QfiScenario.A:
        return sin2 * m1.mean_n
    if scenario is QfiScenario.B:
        return 4 * c4 * m1.var_n + sin2 * m1.mean_n
    return (c4 + s4) * m1.var_n + 0.5 * sin2 * m1.mean_n


def qcrb(F: float) -> float:
    """Cramér-Rao bound ``1/sqrt(F)`` for a single repetition."""
    if not F > 0:
        raise DegenerateInput(f"QCRB undefined for non-positive Fisher information {F!r}")
    return 1.0 / math.sqrt(F)


def qfi_all(m1: ModeMoments, bs, m0: ModeMoments | None = None) -> dict:
    """All three scenario QFIs, ``nan`` where scenario A is undefined."""
    m0 = vacuum_moments() if m0 is None else m0
    out = {}
    for sc in QfiScenario:
        try:
            out[sc.value] = qfi(sc, m0, m1, bs)
        except DegenerateInput:
            out[sc.value] = math.nan
    return out
