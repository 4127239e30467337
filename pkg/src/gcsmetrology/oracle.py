"""Brute-force two-mode Fock-space reference for the interferometer.

Every observable is obtained by applying explicit unitaries to a truncated
state vector and taking matrix expectation values; nothing here uses the
closed forms of :mod:`gcsmetrology.fisher` or :mod:`gcsmetrology.detection`.
Mode 0 and mode 1 are the two input ports; after the first beam splitter they
are ports 2 and 3, after the second ports 4 and 5.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.stats import binom

from .errors import CutoffTooSmall, NonHermitian
from .states import CoherentState

__all__ = [
    "TwoModeState",
    "ModeOperator",
    "embed_input",
    "embed_product",
    "beam_splitter",
    "phase_shift",
    "expect",
    "variance",
    "number_op",
    "annihilation_op",
    "quadrature_op",
    "difference_op",
    "run_interferometer",
    "after_first_splitter",
    "generator_variance_qfi",
    "OracleObservables",
    "observe",
    "thinned_difference_variance",
]

_HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class TwoModeState:
    """Amplitudes ``amps[m0, m1]`` for ``0 <= m0, m1 <= cutoff``."""

    cutoff: int
    amps: np.ndarray = field(repr=False)
    norm_defect: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return self.amps.reshape(-1)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))


@dataclass(frozen=True)
class ModeOperator:
    matrix: np.ndarray = field(repr=False)
    hermitian: bool = False

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.array(self.matrix, dtype=complex))
        if self.hermitian and np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) > _HERMITIAN_TOL:
            raise NonHermitian("matrix flagged hermitian is not self-adjoint")
        self.matrix.setflags(write=False)


def _coeffs(state) -> np.ndarray:
    if isinstance(state, CoherentState):
        return np.asarray(state.coeffs, dtype=complex)
    return np.asarray(state, dtype=complex)


def embed_product(state0, state1, cutoff: Optional[int] = None) -> TwoModeState:
    """Product state ``|state0>_0 (x) |state1>_1``; states are CoherentState or amplitude arrays.

    The beam splitters conserve the total photon number, so the per-mode
    cutoff must cover the sum of both input truncations for the simulation to
    be exact.  The default adds two guard levels.
    """
    a0, a1 = _coeffs(state0), _coeffs(state1)
    need = len(a0) + len(a1) - 2
    if cutoff is None:
        cutoff = need + 2
    if cutoff < need:
        raise CutoffTooSmall(f"oracle cutoff {cutoff} below the largest input photon number {need}")
    v0 = np.zeros(cutoff + 1, dtype=complex)
    v1 = np.zeros(cutoff + 1, dtype=complex)
    v0[: len(a0)] = a0
    v1[: len(a1)] = a1
    amps = np.outer(v0, v1)
    return TwoModeState(cutoff, amps, abs(1.0 - float(np.sum(np.abs(amps) ** 2))))


def embed_input(state1, cutoff: Optional[int] = None) -> TwoModeState:
    """Vacuum in mode 0, ``state1`` in mode 1.  Default cutoff: input cutoff + 2."""
    return embed_product(np.array([1.0 + 0j]), state1, cutoff)


@lru_cache(maxsize=16)
def _ladder(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1)


@lru_cache(maxsize=16)
def _generator_eig(cutoff: int):
    """Eigendecomposition of ``b0^dag b1 + b1^dag b0`` on the truncated space."""
    b = _ladder(cutoff)
    eye = np.eye(cutoff + 1)
    b0, b1 = np.kron(b, eye), np.kron(eye, b)
    g = b0.T @ b1
    g = g + g.T
    w, v = np.linalg.eigh(g)
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


def beam_splitter(state: TwoModeState, kappa: float) -> TwoModeState:
    """Apply ``exp(i kappa/2 (b0^dag b1 + b1^dag b0))``."""
    w, v = _generator_eig(state.cutoff)
    phase = np.exp(0.5j * kappa * w)
    out = v @ (phase * (v.T @ state.vector))
    return TwoModeState(state.cutoff, out.reshape(state.amps.shape), state.norm_defect)


def phase_shift(state: TwoModeState, mode: int, phi: float) -> TwoModeState:
    """Multiply by ``exp(-i phi m)`` on ``mode``."""
    m = np.arange(state.cutoff + 1)
    factor = np.exp(-1j * phi * m)
    amps = state.amps * (factor[:, None] if mode == 0 else factor[None, :])
    return TwoModeState(state.cutoff, amps, state.norm_defect)


def _as_matrix(op) -> np.ndarray:
    return op.matrix if isinstance(op, ModeOperator) else np.asarray(op)


def expect(op, s: TwoModeState) -> complex:
    psi = s.vector
    return complex(np.vdot(psi, _as_matrix(op) @ psi))


def variance(op, s: TwoModeState) -> float:
    if isinstance(op, ModeOperator) and not op.hermitian:
        raise NonHermitian("variance requires a hermitian operator")
    mat = _as_matrix(op)
    phi = mat @ s.vector
    mean = np.vdot(s.vector, phi).real
    return float(np.vdot(phi, phi).real - mean**2)


@lru_cache(maxsize=32)
def annihilation_op(cutoff: int, mode: int) -> ModeOperator:
    b = _ladder(cutoff)
    eye = np.eye(cutoff + 1)
    return ModeOperator((np.kron(b, eye) if mode == 0 else np.kron(eye, b)).astype(complex))


@lru_cache(maxsize=32)
def number_op(cutoff: int, mode: int) -> ModeOperator:
    n = np.arange(cutoff + 1, dtype=float)
    eye = np.ones(cutoff + 1)
    diag = np.kron(n, eye) if mode == 0 else np.kron(eye, n)
    return ModeOperator(np.diag(diag).astype(complex), hermitian=True)


def quadrature_op(cutoff: int, mode: int, phi_l: float) -> ModeOperator:
    """``(e^{-i phi_L} b + e^{i phi_L} b^dag) / 2``."""
    b = annihilation_op(cutoff, mode).matrix * np.exp(-1j * phi_l)
    return ModeOperator(0.5 * (b + b.conj().T), hermitian=True)


@lru_cache(maxsize=16)
def difference_op(cutoff: int) -> ModeOperator:
    return ModeOperator(number_op(cutoff, 0).matrix - number_op(cutoff, 1).matrix, hermitian=True)


def after_first_splitter(state_in: TwoModeState, kappa: float) -> TwoModeState:
    return beam_splitter(state_in, kappa)


def run_interferometer(state_in: TwoModeState, kappa, kappa_p, phi, scenario="b") -> TwoModeState:
    """Full circuit; on return mode 0 is output 4 and mode 1 is output 5."""
    s = beam_splitter(state_in, kappa)
    if str(getattr(scenario, "value", scenario)).lower() == "b":
        s = phase_shift(s, 1, phi)
    else:
        s = phase_shift(s, 1, phi / 2)
        s = phase_shift(s, 0, -phi / 2)
    return beam_splitter(s, kappa_p)


def generator_variance_qfi(s_after_bs1: TwoModeState) -> float:
    """``4 Var(m3)`` on the state between the beam splitters."""
    return 4.0 * variance(number_op(s_after_bs1.cutoff, 1), s_after_bs1)


def _mode_transfer(kappa, kappa_p, phi, scenario) -> np.ndarray:
    """Heisenberg map of the input annihilators, composed from 2x2 element matrices."""
    def bs(k):
        c, s = math.cos(k / 2), math.sin(k / 2)
        return np.array([[c, 1j * s], [1j * s, c]])

    if str(getattr(scenario, "value", scenario)).lower() == "b":
        ph = np.diag([1.0, np.exp(-1j * phi)])
    else:
        ph = np.diag([np.exp(0.5j * phi), np.exp(-0.5j * phi)])
    return bs(kappa_p) @ ph @ bs(kappa)


@dataclass(frozen=True)
class OracleObservables:
    mean_nd: float
    var_nd: float
    mean_m4: float
    var_m4: float
    mean_m5: float
    mean_x: float
    var_x: float
    mean_x_conj: float
    var_x_conj: float
    qfi_b: float
    qfi_c: float
    f_ss: float
    f_dd: float
    f_sd: float


def observe(state_in: TwoModeState, kappa, kappa_p, phi, scenario="b", phi_l: float = 0.0) -> OracleObservables:
    """Every observable the analytic modules predict, measured on ``state_in``."""
    M = state_in.cutoff
    n0, n1 = number_op(M, 0), number_op(M, 1)
    out = run_interferometer(state_in, kappa, kappa_p, phi, scenario)
    nd = difference_op(M)
    x4 = quadrature_op(M, 0, phi_l)

    # the same quadrature by conjugating b4 back onto the input modes
    T = _mode_transfer(kappa, kappa_p, phi, scenario)
    b0, b1 = annihilation_op(M, 0).matrix, annihilation_op(M, 1).matrix
    b4_in = np.exp(-1j * phi_l) * (T[0, 0] * b0 + T[0, 1] * b1)
    x_in = ModeOperator(0.5 * (b4_in + b4_in.conj().T), hermitian=True)

    mid = beam_splitter(state_in, kappa)
    # m2 and m3 are diagonal in the Fock basis: work with occupation numbers directly
    p_mid = np.abs(mid.amps) ** 2
    k = np.arange(M + 1, dtype=float)
    s_val = k[:, None] + k[None, :]
    d_val = k[:, None] - k[None, :]
    mean_s, mean_d = float(np.sum(p_mid * s_val)), float(np.sum(p_mid * d_val))
    return OracleObservables(
        mean_nd=expect(nd, out).real,
        var_nd=variance(nd, out),
        mean_m4=expect(n0, out).real,
        var_m4=variance(n0, out),
        mean_m5=expect(n1, out).real,
        mean_x=expect(x4, out).real,
        var_x=variance(x4, out),
        mean_x_conj=expect(x_in, state_in).real,
        var_x_conj=variance(x_in, state_in),
        qfi_b=generator_variance_qfi(mid),
        qfi_c=variance(n0, mid) + variance(n1, mid),
        f_ss=float(np.sum(p_mid * s_val**2)) - mean_s**2,
        f_dd=float(np.sum(p_mid * d_val**2)) - mean_d**2,
        f_sd=float(np.sum(p_mid * s_val * d_val)) - mean_s * mean_d,
    )


def thinned_difference_variance(out: TwoModeState, eta: float) -> float:
    """Var of ``m4' - m5'`` after independent binomial thinning of both outputs."""
    M = out.cutoff
    p = np.abs(out.amps) ** 2
    k = np.arange(M + 1)
    # thin[n, j] = P(j detected | n present)
    thin = binom.pmf(k[None, :], k[:, None], eta)
    q = thin.T @ p @ thin
    diff = k[:, None] - k[None, :]
    mean = float(np.sum(q * diff))
    return float(np.sum(q * diff**2) - mean**2)
