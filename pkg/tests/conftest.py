import math

import numpy as np
import pytest
from hypothesis import strategies as st

from gcsmetrology.algebra import GLAUBER_PARAMS, AlgebraParams
from gcsmetrology.states import ModeMoments, build_coherent_state, moments

FIG_PARAMS = AlgebraParams(0.5, 0.2, 0.1)


@pytest.fixture(scope="session")
def glauber1():
    return build_coherent_state("gha", 1.0, GLAUBER_PARAMS)


@pytest.fixture(scope="session")
def su11_1():
    return build_coherent_state("su11", 1.0, FIG_PARAMS)


def random_params(rng) -> AlgebraParams:
    """Admissible (a, k, d, e) drawn with k = 1 or a random positive scale."""
    while True:
        k = float(rng.choice([1.0, rng.uniform(0.3, 3.0)]))
        a = float(rng.uniform(-0.95, 0.95)) * k
        d = float(rng.uniform(0.05, 3.0)) * k
        e = float(rng.uniform(-2.0, 3.0))
        p = AlgebraParams(a=a, d=d, e=e, k=k)
        if abs(a) > 1e-3 and abs(e) > 1e-3 and not p.violations():
            return p


def random_fock_moments(rng, dim=8) -> ModeMoments:
    """Moments of a random normalised Fock vector: generic, non-Poissonian, complex."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v *= np.exp(-0.3 * np.arange(dim))
    return moments(v / np.linalg.norm(v))


@st.composite
def fock_vectors(draw, max_dim=7):
    dim = draw(st.integers(1, max_dim))
    re = draw(st.lists(st.floats(-1, 1), min_size=dim, max_size=dim))
    im = draw(st.lists(st.floats(-1, 1), min_size=dim, max_size=dim))
    v = np.array(re) + 1j * np.array(im)
    if np.linalg.norm(v) < 1e-3:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
    return v / np.linalg.norm(v)


kappas = st.floats(0.0, math.pi)
phases = st.floats(-2 * math.pi, 2 * math.pi)


# one summary line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
