"""Dense Hermitian linear algebra for small matrices (d <= 16).

The eigensolver is a cyclic complex Jacobi iteration. It is slower than
LAPACK but deterministic and easy to audit, which is what the rest of the
package needs when comparing eigenvalues against closed forms at 1e-10.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-12
OFFDIAG_TOL = 1e-14
MAX_SWEEPS = 100
ZERO_POPULATION = 1e-12


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int


def _check_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")


def hermitian_error(a: np.ndarray) -> float:
    """Largest entrywise deviation |a_ij - conj(a_ji)|."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def hermitian_eig(a, *, tol: float = OFFDIAG_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like, shape (d, d)
        Hermitian matrix. Symmetry is checked entrywise at 1e-12 relative to
        ``max(1, max|a_ij|)``.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm drops below
        ``tol * max(1, ||a||_F)``.
    max_sweeps : int
        Sweep cap; exceeding it raises :class:`NoConvergence`.

    Returns
    -------
    EigenDecomposition
        Ascending eigenvalues, matching orthonormal eigenvectors as columns,
        and the number of sweeps used.
    """
    a = np.array(a, dtype=complex)
    _check_square(a)
    d = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a)))) if d else 1.0
    if hermitian_error(a) > HERMITIAN_TOL * scale:
        raise NotHermitian(f"matrix is not Hermitian (deviation {hermitian_error(a):.3e})")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(d, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < threshold:
            w = np.diag(a).real.copy()
            order = np.argsort(w, kind="stable")
            return EigenDecomposition(w[order], v[:, order], sweep)
        if sweep == max_sweeps:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = np.conj(sp)
                # a <- G^H a G with G = [[c, s e^{ia}], [-s e^{-ia}, c]] on (p, q)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - spc * col_q
                a[:, q] = sp * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = spc * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - spc * vq
                v[:, q] = sp * vp + c * vq
    raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def eigvalsh(a) -> np.ndarray:
    return hermitian_eig(a).eigenvalues


def lambda_max(a) -> float:
    return float(hermitian_eig(a).eigenvalues[-1])


def lambda_min(a) -> float:
    return float(hermitian_eig(a).eigenvalues[0])


def entrywise_abs(a) -> np.ndarray:
    """Matrix of moduli |a_ij| (real, non-negative)."""
    return np.abs(np.asarray(a))


def diag_part(rho) -> np.ndarray:
    """Keep the diagonal, zero everything else."""
    rho = np.asarray(rho)
    return np.diag(np.diag(rho))


def diag_inv_sqrt(rho, *, zero_tol: float = ZERO_POPULATION) -> np.ndarray:
    """Diagonal matrix with entries rho_ii**-1/2, or 0 where rho_ii <= zero_tol."""
    p = np.diag(np.asarray(rho)).real
    out = np.zeros_like(p)
    mask = p > zero_tol
    out[mask] = 1.0 / np.sqrt(p[mask])
    return np.diag(out)
