import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coherence_nogo.enhancement import apply_ssio, random_sio
from coherence_nogo.errors import NotPositive
from coherence_nogo.linalg import hermitian_eig
from coherence_nogo.measures import (
    c_b_upper_bound,
    c_l1,
    coherent_weight,
    trivial_measure_counterexample,
)
from coherence_nogo.states import random_density_matrix

# Maximal diagonal subtraction solved offline by an interior-point SDP solver
# (Clarabel through cvxpy, gap tolerance 1e-12); not a dependency of the package.
FROZEN_WEIGHTS = {
    "real_qutrit": (np.array([[0.4, 0.15, 0.1], [0.15, 0.35, -0.12], [0.1, -0.12, 0.25]]), 0.74),
    "complex_qutrit": (
        np.array([[0.5, 0.2 + 0.1j, 0.05], [0.2 - 0.1j, 0.3, 0.1j], [0.05, -0.1j, 0.2]]),
        0.7134374746206216,
    ),
    "ququart": (
        np.array(
            [
                [0.3, 0.1, 0.05j, 0.02],
                [0.1, 0.25, 0.08, -0.03],
                [-0.05j, 0.08, 0.25, 0.1],
                [0.02, -0.03, 0.1, 0.2],
            ]
        ),
        0.6936355161992804,
    ),
}


def qubit_weight(rho):
    """Closed-form coherent weight of a qubit."""
    a, c, b = rho[0, 0].real, rho[1, 1].real, abs(rho[0, 1])
    m = min(a, c)
    if b <= m:
        return 2 * b
    return m + b * b / m


def rank2_qutrit():
    psi1 = np.array([1, 1, 0]) / np.sqrt(2)
    psi2 = np.array([0, 1, 1j]) / np.sqrt(2)
    return 0.6 * np.outer(psi1, psi1.conj()) + 0.4 * np.outer(psi2, psi2.conj())


def assert_valid_split(rho, res, atol=1e-8):
    recon = (1 - res.gamma) * res.sigma + res.gamma * res.tau
    assert np.max(np.abs(recon - rho)) <= atol
    assert np.max(np.abs(res.sigma - np.diag(np.diag(res.sigma)))) <= 1e-10
    assert np.trace(res.sigma).real == pytest.approx(1.0, abs=1e-12)
    assert hermitian_eig(res.sigma).eigenvalues[0] >= -1e-10
    assert np.trace(res.tau).real == pytest.approx(1.0, abs=1e-10)
    assert hermitian_eig(res.tau).eigenvalues[0] >= -1e-8


# l1-norm ---------------------------------------------------------------


def test_c_l1_examples(tilted_qubit, plus_state):
    assert c_l1(tilted_qubit) == 0.5
    assert c_l1(np.diag([0.2, 0.3, 0.5])) == 0.0
    assert c_l1(plus_state) == 1.0


def test_c_l1_maximally_coherent():
    assert c_l1(np.full((4, 4), 0.25)) == pytest.approx(3.0)


@given(st.integers(2, 6), st.integers(0, 2**32 - 1), st.sampled_from([0.1, 0.3, 0.5, 0.7, 0.9]))
@settings(max_examples=80, deadline=None)
def test_c_l1_convex(d, seed, p):
    rng = np.random.default_rng(seed)
    r1, r2 = random_density_matrix(d, seed=rng), random_density_matrix(d, seed=rng)
    assert c_l1(p * r1 + (1 - p) * r2) <= p * c_l1(r1) + (1 - p) * c_l1(r2) + 1e-10


@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=80, deadline=None)
def test_c_l1_monotone_under_sio(d, seed):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix(d, seed=rng)
    channel = random_sio(d, int(rng.integers(1, d * d + 1)), rng)
    out, p = apply_ssio(channel, rho)
    assert p == pytest.approx(1.0, abs=1e-12)
    assert c_l1(out) <= c_l1(rho) + 1e-10


# coherent weight ---------------------------------------------------------


def test_incoherent_input_has_zero_weight():
    rho = np.diag([0.2, 0.5, 0.3])
    res = coherent_weight(rho)
    assert res.gamma == 0.0
    np.testing.assert_array_equal(res.sigma, rho)
    assert not res.tau_used
    np.testing.assert_array_equal(res.tau, rho)


def test_pure_coherent_state_has_unit_weight(plus_state):
    res = coherent_weight(plus_state)
    assert res.gamma == 1.0
    assert not res.sigma_used
    np.testing.assert_array_equal(res.sigma, np.eye(2) / 2)
    np.testing.assert_allclose(res.tau, plus_state, atol=1e-12)


def test_equatorial_qubit_weight(equatorial_qubit):
    res = coherent_weight(equatorial_qubit)
    assert res.gamma == pytest.approx(0.5, abs=1e-8)
    assert res.gamma >= res.gamma_lower
    assert_valid_split(equatorial_qubit, res)


@pytest.mark.parametrize("name", sorted(FROZEN_WEIGHTS))
def test_frozen_weights(name):
    rho, expected = FROZEN_WEIGHTS[name]
    res = coherent_weight(rho)
    assert res.gamma == pytest.approx(expected, abs=1e-7)
    assert res.gamma_lower - 1e-9 <= expected <= res.gamma + 1e-9
    assert_valid_split(rho, res)


def test_rank_deficient_with_no_incoherent_direction():
    res = coherent_weight(rank2_qutrit())
    assert res.gamma == 1.0 and res.gamma_lower == 1.0


def test_qubit_closed_form(rng):
    for _ in range(300):
        rho = random_density_matrix(2, seed=rng)
        res = coherent_weight(rho)
        assert res.gamma == pytest.approx(qubit_weight(rho), abs=1e-8)
        assert res.gamma - res.gamma_lower <= 1e-8


@pytest.mark.parametrize("d, rank", [(3, 3), (3, 2), (4, 4), (4, 3), (4, 1), (6, 6), (6, 2), (8, 5)])
def test_certified_and_reconstructs(rng, d, rank):
    for _ in range(8):
        rho = random_density_matrix(d, rank=rank, seed=rng)
        res = coherent_weight(rho)
        assert 0.0 <= res.gamma <= 1.0
        assert res.gamma - res.gamma_lower <= 1e-8
        assert_valid_split(rho, res)


def test_weight_vanishes_only_on_incoherent_states(rng):
    for _ in range(100):
        rho = random_density_matrix(int(rng.integers(2, 5)), seed=rng)
        assert (coherent_weight(rho).gamma <= 1e-8) == (c_l1(rho) <= 1e-10)


def test_tolerance_bounds():
    for tol in (0.0, -1e-3, 0.5):
        with pytest.raises(ValueError):
            coherent_weight(np.eye(2) / 2, tol)


def test_invalid_state_rejected():
    with pytest.raises(NotPositive):
        coherent_weight([[0.5, 0.9], [0.9, 0.5]])


def test_c_b_upper_bound(tilted_qubit, plus_state):
    assert c_b_upper_bound(tilted_qubit) < 1
    assert c_b_upper_bound(np.diag([0.4, 0.6])) == 0.0
    assert c_b_upper_bound(plus_state) == 1.0


# 0/1 indicator -----------------------------------------------------------


def test_trivial_measure_counterexample_exact():
    assert trivial_measure_counterexample() == (1.0, 0.5)
