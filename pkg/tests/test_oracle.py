import numpy as np
import pytest

from coherence_nogo.enhancement import enhancement_ceiling
from coherence_nogo.errors import WrongDimension
from coherence_nogo.measures import c_l1, coherent_weight
from coherence_nogo.oracle import Ensemble, cb_ensemble_oracle, cw_grid_oracle_qubit, ssio_sweep
from coherence_nogo.states import random_density_matrix


def test_grid_oracle_examples(equatorial_qubit, plus_state):
    assert cw_grid_oracle_qubit(equatorial_qubit) == pytest.approx(0.5, abs=1e-4)
    assert cw_grid_oracle_qubit(np.diag([0.3, 0.7])) == pytest.approx(0.0, abs=1e-4)
    assert cw_grid_oracle_qubit(plus_state) == 1.0


def test_grid_oracle_brackets_solver(rng):
    for _ in range(200):
        rho = random_density_matrix(2, seed=rng)
        gamma = coherent_weight(rho).gamma
        grid = cw_grid_oracle_qubit(rho, 1e-4)
        assert gamma - 1e-8 <= grid <= gamma + 2e-4


def test_grid_oracle_matches_full_scan():
    rho = np.array([[0.6, 0.2 - 0.1j], [0.2 + 0.1j, 0.4]])
    step = 1e-3
    a, c, b2 = 0.6, 0.4, 0.05
    d0 = np.arange(0, a + step / 2, step)[:, None]
    d1 = np.arange(0, c + step / 2, step)[None, :]
    ok = (a - d0 >= 0) & (c - d1 >= 0) & ((a - d0) * (c - d1) - b2 >= -1e-12)
    brute = 1 - np.max(np.where(ok, d0 + d1, -np.inf))
    assert cw_grid_oracle_qubit(rho, step) == pytest.approx(brute, abs=1e-12)


def test_grid_oracle_arguments():
    with pytest.raises(WrongDimension):
        cw_grid_oracle_qubit(np.eye(3) / 3)
    with pytest.raises(ValueError):
        cw_grid_oracle_qubit(np.eye(2) / 2, step=0.01)


def test_ensemble_oracle_examples(plus_state, tilted_qubit):
    assert cb_ensemble_oracle(np.diag([0.2, 0.3, 0.5]), 1000, 1) == 0.0
    assert cb_ensemble_oracle(plus_state, 1000, 1) == pytest.approx(1.0, abs=1e-12)
    gamma = coherent_weight(tilted_qubit).gamma
    coarse = cb_ensemble_oracle(tilted_qubit, 1000, 5)
    fine = cb_ensemble_oracle(tilted_qubit, 10_000, 5)
    assert gamma - 1e-6 <= fine <= coarse <= 1.0


def test_ensemble_is_a_decomposition(rng):
    for d in (2, 3):
        rho = random_density_matrix(d, seed=rng)
        value, ens = cb_ensemble_oracle(rho, 1000, rng, return_ensemble=True)
        assert isinstance(ens, Ensemble)
        np.testing.assert_allclose(ens.mixture(), rho, atol=1e-10)
        assert np.sum(ens.weights) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(np.linalg.norm(ens.states, axis=1), 1.0, atol=1e-12)
        assert ens.coherent_weight() == pytest.approx(value)


def test_ensemble_oracle_bounds_coherent_weight(rng):
    for _ in range(10):
        rho = random_density_matrix(3, seed=rng)
        assert coherent_weight(rho).gamma <= cb_ensemble_oracle(rho, 1000, rng) + 1e-6


def test_ensemble_oracle_deterministic(tilted_qubit):
    assert cb_ensemble_oracle(tilted_qubit, 2000, 9) == cb_ensemble_oracle(tilted_qubit, 2000, 9)


def test_sweep_identity_only(rng):
    rho = random_density_matrix(3, seed=rng)
    assert ssio_sweep(rho, 1, 0) == pytest.approx(c_l1(rho), abs=1e-15)


def test_sweep_never_exceeds_ceiling(tilted_qubit):
    best = ssio_sweep(tilted_qubit, 10_000, 3)
    assert best <= 1 / np.sqrt(3) + 1e-8
    assert best > 0.5


def test_sweep_equatorial(equatorial_qubit):
    assert ssio_sweep(equatorial_qubit, 5000, 4) == pytest.approx(0.5, abs=1e-6)


def test_sweep_random_states(rng):
    for _ in range(20):
        rho = random_density_matrix(int(rng.integers(2, 5)), seed=rng)
        assert ssio_sweep(rho, 200, rng) <= enhancement_ceiling(rho) + 1e-8
