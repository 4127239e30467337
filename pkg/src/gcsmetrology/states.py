"""Generalized coherent states and the single-mode moments they feed into.

A coherent state ``|zeta>`` is the eigenvector of the deformed lowering
operator, with Fock amplitudes

    alpha_m = N(|zeta|) zeta^m / N_{m-1}!

The series is truncated adaptively and normalised by direct summation in log
space.  Moments refer to the ordinary photon operators ``b`` and ``m = b^dag b``
acting on the Fock expansion.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .algebra import AlgebraKind, AlgebraParams, build_ladder_seq, validate_params
from .errors import NotConverged
from .hypergeom import hyp_series

__all__ = [
    "CoherentState",
    "ModeMoments",
    "build_coherent_state",
    "moments",
    "vacuum_moments",
    "normalization_crosscheck",
    "closed_form_normalization",
]

DEFAULT_TAIL_TOL = 1e-14
DEFAULT_MAX_CUTOFF = 10_000
_RUN_LENGTH = 5


@dataclass(frozen=True)
class CoherentState:
    kind: AlgebraKind
    zeta: complex
    params: AlgebraParams
    coeffs: np.ndarray = field(repr=False)
    tail_bound: float
    log_norm_sum: float = field(repr=False)

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    @property
    def normalization(self) -> float:
        """``N(|zeta|)``, i.e. ``|alpha_0|``."""
        return math.exp(-0.5 * self.log_norm_sum)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    def amplitudes(self, m_max: int) -> np.ndarray:
        """Amplitudes ``alpha_0..alpha_{m_max}``, continuing the series past the cutoff.

        Uses the same normalisation as :attr:`coeffs`; entries beyond the cutoff
        are the (tiny) analytic values rather than zeros.
        """
        if m_max <= self.cutoff:
            return self.coeffs[: m_max + 1].copy()
        if self.zeta == 0:
            out = np.zeros(m_max + 1, dtype=complex)
            out[0] = 1.0
            return out
        seq = build_ladder_seq(self.params, m_max, self.kind)
        m = np.arange(m_max + 1)
        logs = m * 2.0 * math.log(abs(self.zeta)) - seq.log_fact_sq[: m_max + 1]
        return np.exp(0.5 * (logs - self.log_norm_sum)) * np.exp(1j * cmath.phase(self.zeta) * m)


@dataclass(frozen=True)
class ModeMoments:
    """Single-mode expectations consumed by the QFI and sensitivity formulas.

    ``exp_nb`` is ``<m b>``; the related orderings follow from
    ``<b^dag m> = conj(<m b>)`` and ``<b m> = <m b> + <b>``.
    """

    mean_n: float
    mean_n2: float
    exp_b: complex
    exp_b2: complex
    exp_nb: complex

    @property
    def var_n(self) -> float:
        return self.mean_n2 - self.mean_n**2

    @property
    def exp_bdag_n(self) -> complex:
        return self.exp_nb.conjugate()

    @property
    def exp_b_n(self) -> complex:
        return self.exp_nb + self.exp_b

    @property
    def var_b(self) -> complex:
        """``Delta^2 b = <b^2> - <b>^2`` (complex)."""
        return self.exp_b2 - self.exp_b**2


def vacuum_moments() -> ModeMoments:
    return ModeMoments(0.0, 0.0, 0j, 0j, 0j)


def _choose_cutoff(logs, sq, zeta_abs2, tail_tol, p: AlgebraParams):
    """Return ``(M, tail_bound)`` or ``None`` if no admissible cutoff exists in range."""
    n_terms = len(sq)
    lmax = -np.inf
    running = 0.0  # sum scaled by exp(-lmax)
    run = 0
    c = p.a * p.d - p.e * p.k
    for m in range(n_terms):
        if logs[m] > lmax:
            running = running * math.exp(lmax - logs[m]) + 1.0 if np.isfinite(lmax) else 1.0
            lmax = logs[m]
        else:
            running += math.exp(logs[m] - lmax)
        rel = math.exp(logs[m] - lmax) / running
        run = run + 1 if rel < tail_tol else 0
        if run < _RUN_LENGTH:
            continue
        q = zeta_abs2 / sq[m]
        # ladder values are non-decreasing beyond m once (k n + d)^2 > |ad - ek|
        if q >= 0.5 or (p.k * (m + 1) + p.d) ** 2 <= abs(c):
            continue
        bound = rel * q / (1.0 - q)
        if bound <= tail_tol:
            return m, bound
    return None


def build_coherent_state(
    kind,
    zeta: complex,
    p: AlgebraParams,
    tail_tol: float = DEFAULT_TAIL_TOL,
    max_cutoff: int = DEFAULT_MAX_CUTOFF,
) -> CoherentState:
    """Normalised coherent state of the GHA or generalized su(1,1) algebra.

    The cutoff ``M`` is the first index at which five consecutive terms of
    ``|zeta|^{2m} / (N_{m-1}!)^2`` fall below ``tail_tol`` times the running
    sum, ``|zeta|^2 / N_M^2 < 1/2``, and the geometric bound on the discarded
    probability is at most ``tail_tol``.

    Raises
    ------
    InvalidParams
        Deformation parameters are inadmissible.
    NotConverged
        ``tail_tol`` is not reached within ``max_cutoff``.
    """
    kind = AlgebraKind.parse(kind)
    validate_params(p)
    if not tail_tol > 0:
        raise ValueError("tail_tol must be positive")
    if max_cutoff < 1:
        raise ValueError("max_cutoff must be >= 1")
    zeta = complex(zeta)
    if zeta == 0:
        build_ladder_seq(p, 0, kind)  # still surfaces NonPositiveLadder
        coeffs = np.array([1.0 + 0j])
        coeffs.setflags(write=False)
        return CoherentState(kind, zeta, p, coeffs, 0.0, 0.0)

    zeta_abs2 = abs(zeta) ** 2
    log_z2 = 2.0 * math.log(abs(zeta))  # |zeta|^2 itself may underflow
    trial = min(max_cutoff, 64)
    while True:
        seq = build_ladder_seq(p, trial, kind)
        m = np.arange(trial + 1)
        logs = m * log_z2 - seq.log_fact_sq[: trial + 1]
        found = _choose_cutoff(logs, seq.sq, zeta_abs2, tail_tol, p)
        if found is not None:
            break
        if trial >= max_cutoff:
            raise NotConverged(
                f"tail tolerance {tail_tol:g} not reached within max_cutoff={max_cutoff} "
                f"for |zeta|={abs(zeta):g}"
            )
        trial = min(max_cutoff, 2 * trial)
    cutoff, bound = found
    logs = logs[: cutoff + 1]
    log_s = float(logsumexp(logs))
    phase = np.exp(1j * cmath.phase(zeta) * np.arange(cutoff + 1))
    coeffs = np.exp(0.5 * (logs - log_s)) * phase
    coeffs.setflags(write=False)
    return CoherentState(kind, zeta, p, coeffs, float(bound), log_s)


def moments(state: CoherentState) -> ModeMoments:
    """Photon-number and field moments of a truncated Fock vector."""
    alpha = np.asarray(state.coeffs if isinstance(state, CoherentState) else state, dtype=complex)
    prob = np.abs(alpha) ** 2
    m = np.arange(len(alpha), dtype=float)
    mean_n = float(np.dot(m, prob))
    mean_n2 = float(np.dot(m * m, prob))
    conj = alpha.conj()
    exp_b = complex(np.sum(conj[:-1] * alpha[1:] * np.sqrt(m[1:]))) if len(alpha) > 1 else 0j
    exp_b2 = (
        complex(np.sum(conj[:-2] * alpha[2:] * np.sqrt(m[1:-1] * m[2:]))) if len(alpha) > 2 else 0j
    )
    exp_nb = complex(np.sum(conj[:-1] * m[:-1] * alpha[1:] * np.sqrt(m[1:]))) if len(alpha) > 1 else 0j
    return ModeMoments(mean_n, mean_n2, exp_b, exp_b2, exp_nb)


def closed_form_normalization(state: CoherentState, corrected: bool = False) -> float:
    """``N(|zeta|)`` from the hypergeometric closed form.

    GHA:  ``1F1(d/k + 1; s + 1; |zeta|^2)^{-1/2}`` with ``s = (d + a - e k/d)/k``.
    SU11: ``2F3(d+1, d+a; omega, sigma, a - e/d + d + 1; |zeta|^2)^{-1/2}`` as
    usually quoted.  With ``corrected=True`` the second upper parameter is
    ``d/k + 1`` instead of ``d + a``, which is what the ladder product gives.
    """
    from .algebra import su11_pochhammer_params

    p = state.params
    x = abs(state.zeta) ** 2
    dk = p.d / p.k
    s = (p.d + p.a - p.e * p.k / p.d) / p.k
    if state.kind is AlgebraKind.GHA:
        val, _ = hyp_series([dk + 1], [s + 1], x)
    else:
        omega, sigma = su11_pochhammer_params(p)
        second = dk + 1 if corrected else p.d + p.a
        val, _ = hyp_series([dk + 1, second], [omega, sigma, s + 1], x)
    return float(val.real) ** -0.5


def normalization_crosscheck(state: CoherentState, corrected: bool = False) -> float:
    """Relative deviation of the closed-form normalisation from the summed series."""
    closed = closed_form_normalization(state, corrected=corrected)
    return abs(closed - state.normalization) / state.normalization
