import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coherence_nogo.errors import NoConvergence, NotHermitian
from coherence_nogo.linalg import (
    diag_inv_sqrt,
    diag_part,
    entrywise_abs,
    hermitian_eig,
    lambda_max,
    lambda_min,
)
from coherence_nogo.states import random_density_matrix


def random_hermitian(rng, d, scale=1.0):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return scale * (a + a.conj().T) / 2


def test_identity_spectrum():
    eig = hermitian_eig(np.eye(2))
    np.testing.assert_array_equal(eig.eigenvalues, [1.0, 1.0])


def test_pauli_x_spectrum():
    np.testing.assert_allclose(hermitian_eig([[0, 1], [1, 0]]).eigenvalues, [-1, 1], atol=1e-15)


def test_tilted_qubit_spectrum_matches_characteristic_roots(tilted_qubit):
    # roots of x^2 - x + 1/8
    expected = np.sort(np.roots([1.0, -1.0, 0.125]).real)
    got = hermitian_eig(tilted_qubit).eigenvalues
    np.testing.assert_allclose(got, expected, atol=1e-14)
    np.testing.assert_allclose(got, [(1 - np.sqrt(0.5)) / 2, (1 + np.sqrt(0.5)) / 2], atol=1e-14)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8, 16])
def test_reconstruction_and_orthonormality(rng, d):
    for _ in range(5):
        a = random_hermitian(rng, d)
        eig = hermitian_eig(a)
        v, w = eig.eigenvectors, eig.eigenvalues
        assert np.all(np.diff(w) >= 0)
        assert np.max(np.abs((v * w) @ v.conj().T - a)) <= 1e-10
        assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-10


def test_agrees_with_lapack(rng):
    for d in (2, 4, 7, 16):
        a = random_hermitian(rng, d, scale=10.0)
        np.testing.assert_allclose(hermitian_eig(a).eigenvalues, np.linalg.eigvalsh(a), atol=1e-12)


def test_degenerate_spectrum(rng):
    u = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
    a = (u * np.array([1.0, 1.0, 1.0, -2.0])) @ u.conj().T
    np.testing.assert_allclose(hermitian_eig(a).eigenvalues, [-2, 1, 1, 1], atol=1e-13)


def test_deterministic(rng):
    a = random_hermitian(rng, 6)
    first, second = hermitian_eig(a), hermitian_eig(a)
    np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)
    np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig([[0, 1], [0.5, 0]])
    with pytest.raises(NotHermitian):
        hermitian_eig([[1, 1j], [1j, 1]])


def test_tiny_asymmetry_tolerated():
    a = np.array([[1.0, 0.5], [0.5 + 1e-14, 2.0]])
    assert hermitian_eig(a).eigenvalues.shape == (2,)


def test_sweep_cap():
    a = random_hermitian(np.random.default_rng(1), 8)
    with pytest.raises(NoConvergence):
        hermitian_eig(a, max_sweeps=1)


def test_extreme_eigenvalues(tilted_qubit):
    assert lambda_max(tilted_qubit) == pytest.approx((1 + np.sqrt(0.5)) / 2, abs=1e-14)
    assert lambda_min(tilted_qubit) == pytest.approx((1 - np.sqrt(0.5)) / 2, abs=1e-14)


@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_trace_equals_eigenvalue_sum(d, seed):
    a = random_hermitian(np.random.default_rng(seed), d)
    assert np.sum(hermitian_eig(a).eigenvalues) == pytest.approx(np.trace(a).real, abs=1e-10)


def test_entrywise_abs_examples():
    np.testing.assert_array_equal(entrywise_abs([[0.5, -0.5], [-0.5, 0.5]]), np.full((2, 2), 0.5))
    np.testing.assert_allclose(entrywise_abs([[0.5, 0.5j], [-0.5j, 0.5]]), np.full((2, 2), 0.5))
    d = np.diag([0.2, 0.8])
    np.testing.assert_array_equal(entrywise_abs(d), d)
    assert np.isrealobj(entrywise_abs(np.eye(2, dtype=complex)))


def test_diag_part(tilted_qubit, plus_state):
    np.testing.assert_array_equal(diag_part(tilted_qubit), np.diag([0.75, 0.25]))
    np.testing.assert_array_equal(diag_part(plus_state), np.diag([0.5, 0.5]))
    d = np.diag([0.1, 0.9])
    np.testing.assert_array_equal(diag_part(d), d)


def test_diag_inv_sqrt_examples():
    np.testing.assert_allclose(diag_inv_sqrt(np.diag([0.25, 0.75])), np.diag([2.0, 2 / np.sqrt(3)]))
    np.testing.assert_array_equal(diag_inv_sqrt(np.diag([1.0, 0.0])), np.diag([1.0, 0.0]))
    np.testing.assert_allclose(diag_inv_sqrt(np.eye(2) / 2), np.sqrt(2) * np.eye(2))
    # populations at or below 1e-12 count as zero
    np.testing.assert_array_equal(diag_inv_sqrt(np.diag([1.0, 1e-13])), np.diag([1.0, 0.0]))


@pytest.mark.parametrize("rank", [1, 2, 4])
def test_normalized_diagonal_is_support_indicator(rng, rank):
    for _ in range(20):
        rho = random_density_matrix(4, rank=rank, seed=rng)
        rho[0, :] = rho[:, 0] = 0  # force an empty row
        rho /= np.trace(rho).real
        s = diag_inv_sqrt(rho)
        indicator = np.diag((np.diag(rho).real > 1e-12).astype(float))
        np.testing.assert_allclose(s @ diag_part(rho) @ s, indicator, atol=1e-12)
