"""Brute-force oracles for cross-checking the analytic routines.

They are deliberately naive and share as little code as possible with the
implementations they check: eigenproblems here go through ``numpy.linalg``
instead of the package's Jacobi solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .enhancement import StochasticSIO, apply_ssio, random_ssio
from .errors import WrongDimension
from .measures import c_l1
from .states import as_generator, as_density_matrix

COHERENT_MASS_TOL = 1e-10


@dataclass(frozen=True)
class Ensemble:
    """Pure-state decomposition ``rho = sum_i weights[i] |states[i]><states[i]|``."""

    weights: np.ndarray
    states: np.ndarray  # one unit vector per row

    def mixture(self) -> np.ndarray:
        return np.einsum("k,ki,kj->ij", self.weights, self.states, self.states.conj())

    def coherent_weight(self) -> float:
        """Total weight carried by coherent members."""
        return float(np.sum(self.weights[_is_coherent(self.states)]))


def _is_coherent(vectors: np.ndarray) -> np.ndarray:
    # off-diagonal l1 mass of |psi><psi| for unit psi is (sum |psi_i|)^2 - 1
    l1 = np.sum(np.abs(vectors), axis=-1) ** 2
    norm2 = np.sum(np.abs(vectors) ** 2, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        mass = np.where(norm2 > 0, l1 / norm2 - 1.0, 0.0)
    return mass > COHERENT_MASS_TOL


def _ensemble_from_columns(cols: np.ndarray) -> Ensemble:
    weights = np.sum(np.abs(cols) ** 2, axis=0)
    keep = weights > 1e-300
    states = (cols[:, keep] / np.sqrt(weights[keep])).T
    return Ensemble(weights[keep], states)


def cw_grid_oracle_qubit(rho, step: float = 1e-4) -> float:
    """Coherent weight of a qubit by scanning diagonal subtractions on a grid.

    Every grid point ``(d0, d1)`` with ``rho - diag(d0, d1) >= 0`` is feasible,
    so the result never undershoots the exact value and overshoots by at
    most about ``2 * step``. For each ``d0`` the largest feasible ``d1`` on the
    grid is computed directly, which visits the same maxima as a full scan.
    """
    rho = np.asarray(rho)
    if rho.shape != (2, 2):
        raise WrongDimension(f"grid oracle needs a qubit, got shape {rho.shape}")
    if not 0 < step <= 1e-3:
        raise ValueError("step must lie in (0, 1e-3]")
    rho = as_density_matrix(rho)
    a, c = rho[0, 0].real, rho[1, 1].real
    b2 = abs(rho[0, 1]) ** 2
    # grid index counts absorb round-off so that d0 = a itself is not lost
    d0 = np.arange(int(np.floor(a / step + 1e-9)) + 1) * step
    d0 = np.minimum(d0, a)
    rest0 = a - d0
    with np.errstate(divide="ignore", invalid="ignore"):
        # (a - d0)(c - d1) >= |b|^2 with both factors >= 0
        limit = np.where(rest0 > 0, c - b2 / rest0, np.where(b2 <= 1e-300, c, -np.inf))
    d1 = np.floor((limit + 1e-12) / step) * step
    d1 = np.minimum(d1, np.floor(c / step + 1e-9) * step)
    feasible = d1 >= 0
    if not np.any(feasible):
        return 1.0
    return float(1.0 - np.max(d0[feasible] + d1[feasible]))


def _haar_unitaries(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    z = (rng.standard_normal((n, k, k)) + 1j * rng.standard_normal((n, k, k))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r, axis1=1, axis2=2)
    return q * (ph / np.abs(ph))[:, None, :]


def _greedy_basis_ensemble(rho: np.ndarray, rng: np.random.Generator) -> Ensemble:
    # peel off basis states in random order, each with a random share of the
    # largest weight that keeps the remainder positive; decompose the rest
    d = rho.shape[0]
    rest = rho.copy()
    cols = []
    for i in rng.permutation(d):
        w, v = np.linalg.eigh(rest)
        keep = w > 1e-12 * max(1.0, w[-1])
        if 1.0 - np.sum(np.abs(v[i, keep]) ** 2) > 1e-10:
            continue
        p_max = 1.0 / np.sum(np.abs(v[i, keep]) ** 2 / w[keep])
        share = 1.0 if rng.random() < 0.5 else rng.random()
        p = share * p_max * (1.0 - 1e-9)
        e = np.zeros(d, dtype=complex)
        e[i] = np.sqrt(p)
        cols.append(e)
        rest[i, i] -= p
    w, v = np.linalg.eigh(rest)
    w = np.clip(w, 0.0, None)
    cols.extend((v * np.sqrt(w)).T)
    return _ensemble_from_columns(np.array(cols).T)


def cb_ensemble_oracle(rho, n_trials: int, seed=None, *, return_ensemble: bool = False):
    """Smallest coherent weight found over randomly sampled pure-state ensembles.

    Any ensemble of ``rho`` gives an upper bound on its Boolean coherence.
    Trial 0 is the eigendecomposition; one in fifty of the rest peel basis states
    off greedily, and the remainder mix the square-root decomposition with
    Haar unitaries of size ``d**2``.
    """
    rho = as_density_matrix(rho)
    d = rho.shape[0]
    rng = as_generator(seed)
    w, v = np.linalg.eigh(rho)
    root = v * np.sqrt(np.clip(w, 0.0, None))
    best = _ensemble_from_columns(root)
    best_value = best.coherent_weight()

    n_greedy = max(0, (n_trials - 1) // 50)
    for _ in range(n_greedy):
        ens = _greedy_basis_ensemble(rho, rng)
        value = ens.coherent_weight()
        if value < best_value:
            best, best_value = ens, value

    k = d * d
    padded = np.zeros((d, k), dtype=complex)
    padded[:, :d] = root
    remaining = n_trials - 1 - n_greedy
    while remaining > 0:
        n = min(remaining, 1000)
        remaining -= n
        mixed = padded @ _haar_unitaries(rng, n, k)
        weights = np.sum(np.abs(mixed) ** 2, axis=1)
        coherent = _is_coherent(np.swapaxes(mixed, 1, 2))
        values = np.sum(weights * coherent, axis=1)
        j = int(np.argmin(values))
        if values[j] < best_value:
            best, best_value = _ensemble_from_columns(mixed[j]), float(values[j])

    return (best_value, best) if return_ensemble else best_value


def ssio_sweep(rho, n_channels: int, seed=None, *, diagonal_bias: float = 0.5) -> float:
    """Largest l1-coherence reached by random stochastic SIOs.

    The identity channel is always the first candidate; the others have a
    random number of Kraus operators, diagonal with probability ``diagonal_bias``.
    """
    rho = as_density_matrix(rho)
    d = rho.shape[0]
    rng = as_generator(seed)
    best = c_l1(apply_ssio(StochasticSIO((np.eye(d),)), rho)[0])
    for _ in range(n_channels - 1):
        channel = random_ssio(d, int(rng.integers(1, d * d + 1)), rng, diagonal_bias=diagonal_bias)
        best = max(best, c_l1(apply_ssio(channel, rho)[0]))
    return best
