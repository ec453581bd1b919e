"""Deterministic purification: certify when no free operation can reach a pure state.

A state that splits as ``lambda * sigma + (1 - lambda) * tau`` with an incoherent
``sigma`` and ``lambda > 0`` has Boolean coherence below one and so cannot be
deterministically purified. Full-rank states always admit such a split with
``sigma = I/n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotFullRank
from .linalg import hermitian_eig
from .measures import coherent_weight
from .states import as_density_matrix

FULL_RANK_TOL = 1e-10
GAMMA_TOL = 1e-6


@dataclass(frozen=True)
class DecompositionWitness:
    """``rho = weight * sigma + (1 - weight) * tau`` with ``sigma`` diagonal.

    ``degenerate`` marks the maximally mixed input, where ``weight = 1`` and
    ``tau`` carries no information (it is set to ``sigma``).
    """

    weight: float
    sigma: np.ndarray
    tau: np.ndarray
    degenerate: bool = False

    def reconstruct(self) -> np.ndarray:
        return self.weight * self.sigma + (1.0 - self.weight) * self.tau


@dataclass(frozen=True)
class PurificationReport:
    gamma: float
    full_rank: bool
    lambda_min: float
    purifiable_possible: bool
    witness: DecompositionWitness | None


def full_rank_witness(rho) -> DecompositionWitness:
    """Split a full-rank state into the maximally mixed state plus a remainder.

    With ``n`` the dimension and ``l`` the smallest eigenvalue, the weight is
    ``n * l``, ``sigma = I/n`` and ``tau = (rho - l I) / (1 - n l)``, which is
    singular by construction.
    """
    rho = as_density_matrix(rho)
    n = rho.shape[0]
    lam_min = float(hermitian_eig(rho).eigenvalues[0])
    if lam_min <= FULL_RANK_TOL:
        raise NotFullRank(f"smallest eigenvalue {lam_min:.3e} is not above {FULL_RANK_TOL:.0e}")
    sigma = np.eye(n, dtype=complex) / n
    weight = n * lam_min
    if weight >= 1.0 - 1e-12:
        return DecompositionWitness(1.0, sigma, sigma.copy(), degenerate=True)
    tau = (rho - lam_min * np.eye(n)) / (1.0 - weight)
    return DecompositionWitness(weight, sigma, 0.5 * (tau + tau.conj().T))


def purifiable_possible(rho, tol: float = GAMMA_TOL) -> bool:
    """Verdict of :func:`purifiability_check` without computing unused parts.

    Full rank settles the question, so the coherent weight is only solved
    for rank-deficient states.
    """
    rho = as_density_matrix(rho)
    if hermitian_eig(rho).eigenvalues[0] > FULL_RANK_TOL:
        return False
    return coherent_weight(rho).gamma >= 1.0 - tol


def purifiability_check(rho, tol: float = GAMMA_TOL) -> PurificationReport:
    """Report whether any no-go rules out deterministic purification of ``rho``.

    ``purifiable_possible`` is True only when the coherent weight is 1 within
    ``tol`` and the state is rank deficient; it means no obstruction was found,
    not that a protocol is known.
    """
    rho = as_density_matrix(rho)
    cw = coherent_weight(rho)
    lam_min = float(hermitian_eig(rho).eigenvalues[0])
    full_rank = lam_min > FULL_RANK_TOL
    possible = cw.gamma >= 1.0 - tol and not full_rank

    witness = None
    if full_rank:
        witness = full_rank_witness(rho)
    elif cw.gamma < 1.0 - tol:
        witness = DecompositionWitness(1.0 - cw.gamma, cw.sigma, cw.tau)
    return PurificationReport(cw.gamma, full_rank, lam_min, possible, witness)
