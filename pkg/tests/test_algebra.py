import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gcsmetrology.algebra import (
    GLAUBER_PARAMS,
    AlgebraKind,
    AlgebraParams,
    beta,
    build_ladder_seq,
    casimir_residual,
    epsilon,
    ladder_sq,
    log_factorial_sq_closed_form,
    su11_pochhammer_params,
    validate_params,
)
from gcsmetrology.errors import InvalidParams, NonPositiveLadder

from conftest import random_params


def test_glauber_limit_flat_perturbation():
    n = np.arange(50)
    assert np.allclose(beta(n, GLAUBER_PARAMS), 0.5, atol=1e-15)
    assert GLAUBER_PARAMS.is_glauber_limit
    assert ladder_sq(0, GLAUBER_PARAMS) == pytest.approx(1.0, abs=1e-15)
    assert ladder_sq(9, GLAUBER_PARAMS) == pytest.approx(10.0, abs=1e-13)


def test_su11_glauber_ladder_is_square():
    # eps_n = n + 1/2 gives (m+1)^2
    for m in range(30):
        assert ladder_sq(m, GLAUBER_PARAMS, "su11") == pytest.approx((m + 1) ** 2, rel=1e-15)


def test_epsilon_values():
    p = AlgebraParams(0.7, 0.2, 0.1)
    assert epsilon(0, p) == pytest.approx(0.5)
    assert epsilon(1, p) == pytest.approx(1 + 0.8 / 1.2)


@pytest.mark.parametrize(
    "p, fragment",
    [
        (AlgebraParams(1.2, 0.2, 0.1), "|a/k|<1"),
        (AlgebraParams(0.5, -0.2, 0.1), "d/k>0"),
        (AlgebraParams(0.5, 0.2, 0.0), "e must be"),
        (AlgebraParams(0.5, 1.0, -1.0), "-(4ad-4ke)/k^2>=r-1"),
    ],
)
def test_invalid_params_name_constraint(p, fragment):
    with pytest.raises(InvalidParams) as exc:
        validate_params(p)
    assert any(fragment in v for v in exc.value.violations)


def test_invalid_params_lists_every_violation():
    with pytest.raises(InvalidParams) as exc:
        validate_params(AlgebraParams(2.0, -1.0, 0.1))
    assert len(exc.value.violations) >= 2


def test_non_positive_ladder_reported():
    # admissible-looking but with a negative first gap: eps_1 < eps_0
    p = AlgebraParams(a=-0.9, d=0.05, e=2.0, k=1.0)
    assert not p.violations()
    with pytest.raises(NonPositiveLadder):
        build_ladder_seq(p, 5, "gha")


def test_ladder_seq_matches_scalar():
    p = AlgebraParams(0.3, 0.7, 0.4)
    for kind in AlgebraKind:
        seq = build_ladder_seq(p, 40, kind)
        scalars = [ladder_sq(m, p, kind) for m in range(41)]
        assert np.array_equal(seq.sq, scalars)
        assert seq.log_fact_sq[0] == 0.0
        assert seq.log_fact_sq[-1] == pytest.approx(np.sum(np.log(scalars)), rel=1e-14)
        assert not seq.sq.flags.writeable


@pytest.mark.parametrize("kind", list(AlgebraKind))
def test_casimir_constant(kind):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        p = random_params(rng)
        try:
            build_ladder_seq(p, 100, kind)
        except NonPositiveLadder:
            continue
        worst = max(worst, max(abs(casimir_residual(m, p, kind)) for m in range(101)))
    assert worst <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 60), st.floats(-0.9, 0.9), st.floats(0.05, 2.0), st.floats(0.01, 2.0))
def test_gamma_closed_form_matches_prefix_sum(m, a, d, e):
    p = AlgebraParams(a, d, e)
    if p.violations():
        return
    for kind in AlgebraKind:
        try:
            seq = build_ladder_seq(p, max(m, 1), kind)
        except NonPositiveLadder:
            continue
        ref = seq.log_fact_sq[m]
        assert log_factorial_sq_closed_form(m, p, kind) == pytest.approx(ref, rel=1e-10, abs=1e-10)


def test_pochhammer_roots_k1_formula():
    p = AlgebraParams(0.7, 0.2, 0.1)
    omega, sigma = su11_pochhammer_params(p)
    s = p.a + p.d + 1 + p.e / p.d
    q = p.a + 2 * p.e + p.e / p.d
    assert omega + sigma == pytest.approx(s)
    assert omega * sigma == pytest.approx(q)
