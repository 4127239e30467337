import math

import numpy as np
import pytest
from scipy.special import gammaln

from gcsmetrology import oracle
from gcsmetrology.algebra import GLAUBER_PARAMS, AlgebraParams
from gcsmetrology.errors import CutoffTooSmall, NonHermitian
from gcsmetrology.fisher import qfi_specialized
from gcsmetrology.states import build_coherent_state, moments


def fock(cutoff, n0, n1):
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    amps[n0, n1] = 1.0
    return oracle.TwoModeState(cutoff, amps)


def test_embed_vacuum():
    s = oracle.embed_input(build_coherent_state("gha", 0, GLAUBER_PARAMS))
    assert s.amps[0, 0] == 1 and np.count_nonzero(s.amps) == 1


def test_embed_glauber(glauber1):
    s = oracle.embed_input(glauber1)
    m = np.arange(glauber1.cutoff + 1)
    assert np.allclose(s.amps[0, : len(m)], np.exp(-0.5 - 0.5 * gammaln(m + 1)), atol=1e-14)
    assert np.all(s.amps[1:] == 0)


def test_embed_su11_reciprocal_factorial(su11_1):
    s = oracle.embed_input(su11_1)
    m = np.arange(su11_1.cutoff + 1)
    r = s.amps[0, m].real * np.exp(gammaln(m + 1))
    assert np.allclose(r, r[0], rtol=1e-12)


def test_cutoff_too_small(glauber1):
    with pytest.raises(CutoffTooSmall):
        oracle.embed_input(glauber1, cutoff=3)


def test_single_photon_beam_splitter():
    out = oracle.beam_splitter(fock(4, 1, 0), math.pi / 2)
    assert out.amps[1, 0] == pytest.approx(1 / math.sqrt(2))
    assert out.amps[0, 1] == pytest.approx(1j / math.sqrt(2))
    full = oracle.beam_splitter(fock(4, 1, 0), math.pi)
    assert full.amps[0, 1] == pytest.approx(1j)
    same = oracle.beam_splitter(fock(4, 2, 1), 0.0)
    assert np.allclose(same.amps, fock(4, 2, 1).amps, atol=1e-14)


def test_phase_shift():
    s = fock(3, 0, 1)
    assert oracle.phase_shift(s, 1, 0.7).amps[0, 1] == pytest.approx(np.exp(-0.7j))
    assert np.allclose(oracle.phase_shift(s, 1, 2 * math.pi).amps, s.amps, atol=1e-12)
    assert np.array_equal(oracle.phase_shift(s, 0, 0.0).amps, s.amps)


def test_heisenberg_picture():
    M, kappa = 8, 1.1
    dim = (M + 1) ** 2
    # columns of U are images of basis vectors
    U = np.empty((dim, dim), dtype=complex)
    for j in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[j] = 1
        U[:, j] = oracle.beam_splitter(oracle.TwoModeState(M, e.reshape(M + 1, M + 1)), kappa).vector
    b0 = oracle.annihilation_op(M, 0).matrix
    b1 = oracle.annihilation_op(M, 1).matrix
    lhs = U.conj().T @ b0 @ U
    rhs = math.cos(kappa / 2) * b0 + 1j * math.sin(kappa / 2) * b1
    idx = [n0 * (M + 1) + n1 for n0 in range(M - 1) for n1 in range(M - 1) if n0 + n1 <= M - 2]
    assert np.max(np.abs((lhs - rhs)[np.ix_(idx, idx)])) < 1e-10


def test_unitarity_of_circuit(su11_1):
    s = oracle.embed_input(su11_1)
    out = oracle.run_interferometer(s, 0.9, 2.1, 1.3, "c")
    out = oracle.beam_splitter(oracle.phase_shift(out, 0, 0.4), 0.3)
    assert abs(out.norm() - s.norm()) < 1e-12


def test_variance_requires_hermitian(glauber1):
    s = oracle.embed_input(glauber1)
    with pytest.raises(NonHermitian):
        oracle.variance(oracle.annihilation_op(s.cutoff, 0), s)
    with pytest.raises(NonHermitian):
        oracle.ModeOperator(oracle.annihilation_op(3, 0).matrix, hermitian=True)


def test_vacuum_expectations():
    s = fock(3, 0, 0)
    assert oracle.expect(oracle.number_op(3, 1), s) == 0
    assert oracle.variance(oracle.number_op(3, 0), s) == 0


def test_glauber_difference_variance(glauber1):
    s = oracle.embed_input(glauber1)
    obs = oracle.observe(s, math.pi / 2, math.pi / 2, math.pi / 2)
    assert obs.var_nd == pytest.approx(1.0, abs=1e-12)
    assert obs.var_x == pytest.approx(obs.var_x_conj, abs=1e-12)
    assert obs.mean_x == pytest.approx(obs.mean_x_conj, abs=1e-12)


def test_generator_variance(glauber1, su11_1):
    assert oracle.generator_variance_qfi(oracle.embed_input(build_coherent_state("gha", 0, GLAUBER_PARAMS))) == 0
    mid = oracle.after_first_splitter(oracle.embed_input(glauber1), math.pi / 2)
    assert oracle.generator_variance_qfi(mid) == pytest.approx(2.0, abs=1e-12)
    mid = oracle.after_first_splitter(oracle.embed_input(su11_1), math.pi / 2)
    assert oracle.generator_variance_qfi(mid) == pytest.approx(
        qfi_specialized("b", moments(su11_1), math.pi / 2), abs=1e-8)


def test_binomial_thinning_matches_loss_model(su11_1):
    from gcsmetrology.detection import InterferometerConfig, difference_moments
    from gcsmetrology.states import vacuum_moments

    s = oracle.embed_input(su11_1)
    out = oracle.run_interferometer(s, 1.0, 2.0, 0.8)
    cfg = InterferometerConfig(1.0, 2.0, 0.8)
    _, var, _, total = difference_moments(vacuum_moments(), moments(su11_1), cfg)
    for eta in (0.3, 0.6, 1.0):
        expected = eta**2 * var + eta * (1 - eta) * total
        assert oracle.thinned_difference_variance(out, eta) == pytest.approx(expected, abs=1e-10)
