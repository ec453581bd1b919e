"""Density-matrix validation and random state generation."""

from __future__ import annotations

import numpy as np

from .errors import InvalidState, NotHermitian, NotPositive, NotUnitTrace, WrongDimension
from .linalg import hermitian_error

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


def as_density_matrix(rho, *, check_psd: bool = True) -> np.ndarray:
    """Return ``rho`` as a complex array after validating it.

    Raises :class:`NotHermitian`, :class:`NotUnitTrace` or :class:`NotPositive`
    naming the first violated invariant. The PSD test is a Cholesky
    factorization of ``rho + 1e-10 I``, which succeeds exactly when the
    smallest eigenvalue exceeds -1e-10 (up to rounding).
    """
    rho = np.array(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        raise WrongDimension(f"expected a nonempty square matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidState("state contains NaN or Inf entries")
    err = hermitian_error(rho)
    if err > HERMITIAN_TOL:
        raise NotHermitian(f"state is not Hermitian: max |rho_ij - conj(rho_ji)| = {err:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotUnitTrace(f"state trace is {float(tr)!r}, not 1")
    if check_psd:
        try:
            np.linalg.cholesky(0.5 * (rho + rho.conj().T) + PSD_TOL * np.eye(rho.shape[0]))
        except np.linalg.LinAlgError:
            raise NotPositive("state is not positive semidefinite (eigenvalue below -1e-10)") from None
    return rho


def is_density_matrix(rho) -> bool:
    try:
        as_density_matrix(rho)
    except InvalidState:
        return False
    return True


def is_incoherent(rho, tol: float = 1e-10) -> bool:
    rho = np.asarray(rho)
    return bool(np.sum(np.abs(rho - np.diag(np.diag(rho)))) <= tol)


def as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase fix."""
    rng = as_generator(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_pure_state(dim: int, seed=None) -> np.ndarray:
    rng = as_generator(seed)
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


def random_density_matrix(dim: int, rank: int | None = None, seed=None) -> np.ndarray:
    """Random state of the given rank.

    Eigenvectors are the first ``rank`` columns of a Haar unitary, the
    nonzero eigenvalues are drawn from the flat Dirichlet distribution.
    """
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must be in [1, {dim}], got {rank}")
    rng = as_generator(seed)
    u = random_unitary(dim, rng)[:, :rank]
    p = rng.dirichlet(np.ones(rank))
    rho = (u * p) @ u.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def maximally_coherent_state(dim: int) -> np.ndarray:
    return np.full((dim, dim), 1.0 / dim, dtype=complex)


def maximally_mixed_state(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim
