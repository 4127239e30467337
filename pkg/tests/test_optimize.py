import math

import pytest
from hypothesis import given, settings, strategies as st

from gcsmetrology.errors import NoFiniteValue
from gcsmetrology.optimize import golden_section, optimize_phase


@settings(max_examples=50, deadline=None)
@given(st.floats(0.2, 2.9), st.floats(0.1, 5.0))
def test_golden_section_quadratic(x0, w):
    x, fx = golden_section(lambda x: w * (x - x0) ** 2, 0.0, math.pi, tol=1e-10)
    assert x == pytest.approx(x0, abs=1e-6)


def test_golden_section_flat_and_monotone():
    x, fx = golden_section(lambda x: 1.0, 0.0, 1.0)
    assert fx == 1.0
    x, fx = golden_section(lambda x: -x, 0.0, 1.0)
    assert x == pytest.approx(1.0, abs=1e-8)


def test_optimize_phase_interior():
    phi, val = optimize_phase(lambda p: 1 / abs(math.sin(p)) if math.sin(p) else math.inf)
    assert phi == pytest.approx(math.pi / 2, abs=1e-7)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_optimize_phase_boundary_with_infinite_endpoint():
    f = lambda p: math.inf if p >= math.pi else 1 + (math.pi - p)
    phi, val = optimize_phase(f)
    assert math.isfinite(val) and phi < math.pi
    assert phi == pytest.approx(math.pi, abs=1e-7)


def test_all_infinite():
    with pytest.raises(NoFiniteValue):
        optimize_phase(lambda p: math.inf)


def test_grid_refinement_invariance():
    f = lambda p: (p - 1.2345678) ** 2 + 0.5
    a, _ = optimize_phase(f, n_grid=721)
    b, _ = optimize_phase(f, n_grid=1441)
    assert abs(a - b) < 1e-6
