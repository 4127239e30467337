"""Generalized hypergeometric series pFq summed term by term."""
from __future__ import annotations

import math
from typing import Sequence, Tuple


def hyp_series(
    upper: Sequence[complex],
    lower: Sequence[complex],
    x: float,
    rtol: float = 1e-17,
    max_terms: int = 100_000,
) -> Tuple[complex, int]:
    """Sum ``pFq(upper; lower; x)`` directly from the term ratio.

    Summation stops once three consecutive terms are below ``rtol`` times the
    running sum and the term ratio has dropped under 1/2, so the neglected tail
    is bounded by a geometric series.  Complex parameters are allowed (the
    su(1,1) Pochhammer roots can form a conjugate pair).

    Returns
    -------
    value, n_terms
    """
    term = complex(1.0)
    total = complex(1.0)
    small = 0
    for n in range(max_terms):
        num = complex(x)
        for a in upper:
            num *= a + n
        den = complex(n + 1)
        for b in lower:
            den *= b + n
        if den == 0:
            raise ZeroDivisionError(f"lower parameter hits a non-positive integer at n={n}")
        ratio = num / den
        term *= ratio
        total += term
        if abs(term) <= rtol * abs(total) and abs(ratio) < 0.5:
            small += 1
            if small >= 3:
                return total, n + 2
        else:
            small = 0
        if not math.isfinite(abs(total)):
            raise OverflowError("hypergeometric series overflowed")
    raise RuntimeError(f"hypergeometric series not converged in {max_terms} terms")
