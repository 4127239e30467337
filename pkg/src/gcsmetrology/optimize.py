"""Working-point search over the internal phase."""
from __future__ import annotations

import math
from typing import Callable, Tuple

import numpy as np

from .errors import NoFiniteValue

__all__ = ["golden_section", "optimize_phase", "DEFAULT_GRID", "DEFAULT_TOL"]

DEFAULT_GRID = 721
DEFAULT_TOL = 1e-8
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    """Minimise ``f`` on ``[lo, hi]`` until the bracket is shorter than ``tol``.

    Unlike :func:`scipy.optimize.golden` this needs no interior point lower
    than both ends, so it behaves on flat or monotone stretches.  Ties keep
    the left sub-interval, which makes the result deterministic.
    """
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a >= tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def optimize_phase(
    f: Callable[[float], float],
    n_grid: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
    lo: float = 0.0,
    hi: float = math.pi,
) -> Tuple[float, float]:
    """Grid scan on ``[lo, hi]`` followed by golden-section refinement.

    Returns ``(phi_opt, f_min)``.  The refined point is only accepted when it
    does not exceed the best grid value.

    Raises
    ------
    NoFiniteValue
        Every grid value is infinite or NaN.
    """
    grid = np.linspace(lo, hi, n_grid)
    vals = np.array([f(float(x)) for x in grid])
    finite = np.isfinite(vals)
    if not finite.any():
        raise NoFiniteValue("objective is infinite on the whole phase grid")
    vals = np.where(finite, vals, np.inf)
    j = int(np.argmin(vals))
    a = float(grid[max(j - 1, 0)])
    b = float(grid[min(j + 1, n_grid - 1)])
    x, fx = golden_section(f, a, b, tol)
    if math.isfinite(fx) and fx <= vals[j]:
        return x, float(fx)
    return float(grid[j]), float(vals[j])
