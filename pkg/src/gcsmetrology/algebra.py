"""Deformed spectra and ladder coefficients of the GHA and generalized su(1,1) algebras.

The perturbed oscillator spectrum is

    eps_n = n + beta(n),    beta(n) = (a n + e) / (k n + d),

and the ladder coefficients are

    GHA:    N_m^2 = eps_{m+1} - eps_0
    SU11:   N_m^2 = (eps_{m+1} - eps_0) (eps_{m+1} + eps_0 - 1).

Factorial products ``(N_{m-1}!)^2`` are accumulated as prefix sums of logs.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np
from scipy.special import loggamma

from .errors import InvalidParams, NonPositiveLadder

__all__ = [
    "AlgebraKind",
    "AlgebraParams",
    "LadderSeq",
    "validate_params",
    "beta",
    "epsilon",
    "ladder_sq",
    "build_ladder_seq",
    "casimir_residual",
    "su11_pochhammer_params",
    "log_factorial_sq_closed_form",
    "GLAUBER_PARAMS",
]


class AlgebraKind(str, enum.Enum):
    GHA = "gha"
    SU11 = "su11"

    @classmethod
    def parse(cls, value) -> "AlgebraKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown algebra kind {value!r}; expected 'gha' or 'su11'") from None


@dataclass(frozen=True)
class AlgebraParams:
    """Four-parameter deformation ``(a, k, d, e)``.

    ``r`` is the free constant of the admissibility inequality
    ``-(4ad - 4ke)/k^2 >= r - 1``; the default ``r = 0`` is the weakest
    instance of that constraint.
    """

    a: float
    d: float
    e: float
    k: float = 1.0
    r: float = 0.0

    def violations(self) -> List[str]:
        a, k, d, e, r = self.a, self.k, self.d, self.e, self.r
        out = []
        for name, val in (("a", a), ("k", k), ("d", d), ("e", e)):
            if val == 0 or not math.isfinite(val):
                out.append(f"{name} must be finite and non-zero")
        if k == 0 or not math.isfinite(k):
            return out
        if not abs(a / k) < 1:
            out.append("|a/k|<1")
        if not d / k > 0:
            out.append("d/k>0")
        if not 0.0 <= r <= 1.0:
            out.append("r in [0,1]")
        if not -(4 * a * d - 4 * k * e) / k**2 >= r - 1:
            out.append("-(4ad-4ke)/k^2>=r-1")
        return out

    @property
    def is_glauber_limit(self) -> bool:
        """True when the spectrum is the ordinary oscillator (beta constant 1/2)."""
        return self.a == 0.5 * self.k and self.e == 0.5 * self.d


GLAUBER_PARAMS = AlgebraParams(a=0.5, d=0.2, e=0.1)


def validate_params(p: AlgebraParams) -> None:
    """Raise :class:`InvalidParams` listing every violated constraint."""
    bad = p.violations()
    if bad:
        raise InvalidParams(bad)


def beta(n, p: AlgebraParams):
    """Spectral perturbation ``(a n + e) / (k n + d)``; accepts scalars or arrays."""
    return (p.a * n + p.e) / (p.k * n + p.d)


def epsilon(n, p: AlgebraParams):
    return n + beta(n, p)


def _gap(n, p: AlgebraParams):
    # eps_n - eps_0 written without cancellation: n (1 + (ad - ek) / (d (kn + d)))
    return n * (1.0 + (p.a * p.d - p.e * p.k) / (p.d * (p.k * n + p.d)))


def _ladder_sq(m, kind: AlgebraKind, p: AlgebraParams):
    # extended-precision intermediates keep the float64 result within ~0.5 ulp
    m = np.asarray(m, dtype=np.longdouble)
    q = AlgebraParams(*(np.longdouble(v) for v in (p.a, p.d, p.e, p.k)))
    n = m + 1
    gap = _gap(n, q)
    if kind is AlgebraKind.GHA:
        out = gap
    else:
        out = gap * (m + beta(n, q) + beta(0, q))
    return out.astype(np.float64)


def ladder_sq(m: int, p: AlgebraParams, kind=AlgebraKind.GHA) -> float:
    """Squared ladder coefficient ``N_m^2`` (GHA) or ``𝒩_m^2`` (SU11).

    Raises
    ------
    NonPositiveLadder
        If the value is not strictly positive.
    """
    kind = AlgebraKind.parse(kind)
    if m < 0:
        raise ValueError("m must be non-negative")
    val = float(_ladder_sq(m, kind, p))
    if not val > 0:
        raise NonPositiveLadder(m, val)
    return val


@dataclass(frozen=True)
class LadderSeq:
    kind: AlgebraKind
    params: AlgebraParams
    sq: np.ndarray = field(repr=False)
    log_fact_sq: np.ndarray = field(repr=False)

    @property
    def cutoff(self) -> int:
        return len(self.sq) - 1


def build_ladder_seq(p: AlgebraParams, cutoff: int, kind=AlgebraKind.GHA) -> LadderSeq:
    """Ladder coefficients for ``m = 0..cutoff`` and ``ln (N_{m-1}!)^2`` for ``m = 0..cutoff+1``."""
    kind = AlgebraKind.parse(kind)
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    m = np.arange(cutoff + 1, dtype=float)
    sq = np.asarray(_ladder_sq(m, kind, p), dtype=float)
    bad = np.flatnonzero(~(sq > 0))
    if bad.size:
        raise NonPositiveLadder(int(bad[0]), float(sq[bad[0]]))
    log_fact_sq = np.zeros(cutoff + 2)
    np.cumsum(np.log(sq), out=log_fact_sq[1:])
    sq.setflags(write=False)
    log_fact_sq.setflags(write=False)
    return LadderSeq(kind, p, sq, log_fact_sq)


def casimir_residual(m: int, p: AlgebraParams, kind=AlgebraKind.GHA) -> float:
    """Deviation of ``<m|C|m>`` from its vacuum value.

    GHA: ``C = B^dag B - H`` so ``N_{m-1}^2 - eps_m`` must equal ``-eps_0``.
    SU11: ``C = G_+ G_- - H(H-1)`` so ``𝒩_{m-1}^2 - eps_m(eps_m-1)`` must equal
    ``-eps_0(eps_0-1)``.  The ladder value is the float returned by
    :func:`ladder_sq`; the remaining arithmetic is done exactly in rationals so
    the residual measures only the error of the computed coefficient, which is
    bounded by half an ulp of ``N_{m-1}^2``.
    """
    kind = AlgebraKind.parse(kind)
    lad = Fraction(0) if m == 0 else Fraction(ladder_sq(m - 1, p, kind))
    a, k, d, e = (Fraction(v) for v in (p.a, p.k, p.d, p.e))
    e_m = m + (a * m + e) / (k * m + d)
    e_0 = e / d
    if kind is AlgebraKind.GHA:
        res = (lad - e_m) + e_0
    else:
        res = (lad - e_m * (e_m - 1)) + e_0 * (e_0 - 1)
    return float(res)


def su11_pochhammer_params(p: AlgebraParams):
    """Roots ``(omega, sigma)`` with ``eps_m + eps_0 - 1 = (m-1+omega)(m-1+sigma)/(m + d/k)``.

    For ``k = 1`` these are ``1/2 (a+d+1+e/d) -/+ 1/2 sqrt((a+d+1+e/d)^2 - 4(a+2e+e/d))``.
    Complex-conjugate pairs are returned as complex numbers.
    """
    a, k, d, e = p.a, p.k, p.d, p.e
    lin = (d - k + a + e * k / d) / k
    const = (2 * e - d) / k
    total = 2 + lin
    prod = 1 + lin + const
    disc = complex(total * total - 4 * prod)
    root = disc**0.5
    omega, sigma = 0.5 * (total - root), 0.5 * (total + root)
    if disc.real >= 0:
        return omega.real, sigma.real
    return omega, sigma


def log_factorial_sq_closed_form(m: int, p: AlgebraParams, kind=AlgebraKind.SU11) -> float:
    """``ln (N_{m-1}!)^2`` from Gamma functions; a cross-check, not the ground truth.

    GHA:  m! (s+1)_m / (d/k+1)_m with s = (d + a - e k/d)/k
    SU11: the GHA product times (omega)_m (sigma)_m / (d/k+1)_m
    """
    kind = AlgebraKind.parse(kind)
    a, k, d, e = p.a, p.k, p.d, p.e
    s = (d + a - e * k / d) / k
    dk = d / k

    def lpoch(x, n):
        return loggamma(x + n) - loggamma(x)

    val = loggamma(m + 1.0) + lpoch(s + 1, m) - lpoch(dk + 1, m)
    if kind is AlgebraKind.SU11:
        omega, sigma = su11_pochhammer_params(p)
        val = val + lpoch(omega, m) + lpoch(sigma, m) - lpoch(dk + 1, m)
    return float(np.real(val))
