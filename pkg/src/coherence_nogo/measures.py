"""Coherence measures: l1-norm, coherent weight, and the C_trivial counterexample."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotConverged
from .linalg import hermitian_eig
from .states import as_density_matrix

RANK_TOL = 1e-12
SUPPORT_TOL = 1e-10


def c_l1(rho) -> float:
    """l1-norm of coherence, the sum of moduli of the off-diagonal entries."""
    rho = np.asarray(rho)
    off = rho - np.diag(np.diag(rho))
    return float(np.sum(np.abs(off)))


@dataclass(frozen=True)
class CoherentWeightResult:
    """Optimal split ``rho = (1 - gamma) sigma + gamma tau`` with sigma incoherent.

    ``gamma_lower`` is a dual lower bound on the exact weight, so the true
    value lies in ``[gamma_lower, gamma]``. ``sigma_used`` is False when
    gamma == 1 (sigma is then a placeholder I/d) and ``tau_used`` is False
    when gamma == 0 (tau is then rho itself).
    """

    gamma: float
    sigma: np.ndarray
    tau: np.ndarray
    iterations: int
    gamma_lower: float
    sigma_used: bool = True
    tau_used: bool = True


def _support(rho: np.ndarray):
    eig = hermitian_eig(rho)
    w, v = eig.eigenvalues, eig.eigenvectors
    keep = w > RANK_TOL * max(1.0, w[-1])
    q = v[:, keep]
    # basis indices i with e_i inside range(rho); only those may carry weight
    null_weight = 1.0 - np.sum(np.abs(q) ** 2, axis=1)
    allowed = np.flatnonzero(null_weight <= SUPPORT_TOL)
    return w[keep], q, allowed


def _max_diagonal_subtraction(lam, qj, tol, max_newton, dual_bound):
    """Maximize sum(x) subject to diag(lam) - sum_i x_i q_i q_i^H >= 0, x >= 0.

    ``qj`` holds the rows of the support basis for the allowed indices, so
    ``q_i = qj[i].conj()``. Log-barrier path following with damped Newton
    centering. ``dual_bound(x, t)`` turns the central point into a certified
    upper bound on the optimum. Returns the primal point, that bound, and the
    Newton step count.
    """
    r = lam.size
    m = qj.shape[0]
    x = np.full(m, 0.5 * lam.min())
    n_barrier = r + m
    t = n_barrier / max(lam.sum(), 1e-300)
    steps = 0

    def slack(xv):
        return np.diag(lam).astype(complex) - (qj.conj().T * xv) @ qj

    def feasible(xv):
        if np.any(xv <= 0):
            return False
        try:
            np.linalg.cholesky(slack(xv))
        except np.linalg.LinAlgError:
            return False
        return True

    best = None
    while True:
        # damped Newton centering; the 1/(1+lambda) step stays inside the
        # Dikin ellipsoid of the self-concordant barrier
        previous = np.inf
        for _ in range(50):
            s = np.linalg.inv(slack(x))
            w = qj @ s @ qj.conj().T
            g = t - w.diagonal().real + 1.0 / x
            # solve in x-scaled coordinates; raw 1/x**2 terms are badly scaled
            # when some optimal x_i sit on the x >= 0 face
            hs = np.outer(x, x) * np.abs(w) ** 2 + np.eye(m)
            dx = x * np.linalg.solve(hs, x * g)
            decrement = float(g @ dx)
            if not decrement > 1e-10 or (decrement < 1e-4 and decrement > 0.5 * previous):
                break
            previous = decrement
            alpha = 1.0 if decrement < 0.0625 else 1.0 / (1.0 + np.sqrt(decrement))
            while not feasible(x + alpha * dx) and alpha > 1e-12:
                alpha *= 0.5
            steps += 1
            if steps > max_newton:
                raise NotConverged(f"coherent weight solver exceeded {max_newton} Newton steps")
            if alpha <= 1e-12:
                break
            x = x + alpha * dx

        upper = dual_bound(x, t)
        gap = upper - x.sum()
        if best is None or gap < best[1] - best[0].sum():
            best = (x.copy(), upper)
        if gap <= tol:
            return x, upper, steps
        if gap > 10.0 * (best[1] - best[0].sum()) or t > 1e18:
            # rounding floor reached: further path following only adds noise
            raise NotConverged(
                f"coherent weight duality gap stalled at {best[1] - best[0].sum():.3e} > tol {tol:.1e}"
            )
        # the rounding floor grows with t, so approach the target gently
        t *= 10.0 if gap > 100.0 * tol else 2.0


def coherent_weight(rho, tol: float = 1e-8, *, max_newton: int = 500) -> CoherentWeightResult:
    """Coherent weight: the least gamma with rho = (1-gamma) sigma + gamma tau, sigma incoherent.

    Solves ``max Tr D`` over diagonal ``D >= 0`` with ``rho - D >= 0``; then
    ``gamma = 1 - Tr D``. The returned gamma belongs to a feasible split, so
    it never undershoots the exact value, and it is within ``tol`` of it
    (certified by a dual point, reported as ``gamma_lower``).

    Diagonal entries whose basis vector leaves the range of a rank-deficient
    rho are pinned to zero; the rest is solved inside the support, where
    the feasible set has nonempty interior.
    """
    if not 0 < tol <= 1e-2:
        raise ValueError("tol must lie in (0, 1e-2]")
    rho = as_density_matrix(rho)
    d = rho.shape[0]
    if c_l1(rho) <= RANK_TOL:
        sigma = np.diag(np.diag(rho).real).astype(complex)
        return CoherentWeightResult(0.0, sigma, rho.copy(), 0, 0.0, tau_used=False)

    lam, q, allowed = _support(rho)
    null_proj = np.eye(d) - q @ q.conj().T

    def dual_bound(xa, t):
        # Z = A^-1 / t is dual feasible once every diagonal entry is >= 1.
        # Congruence D Z D fixes the diagonal; entries near 1 (active
        # constraints, slightly off-center) are pulled to exactly 1, entries
        # well above 1 are left alone since shrinking them costs first order.
        # Every choice is a valid bound, so keep the smallest.
        slack = np.diag(lam).astype(complex) - (q[allowed].conj().T * xa) @ q[allowed]
        z = np.linalg.inv(slack) / t
        z = q @ (0.5 * (z + z.conj().T)) @ q.conj().T
        z = z + max(1.0, float(np.max(np.diag(z).real))) * null_proj
        dz = np.diag(z).real
        best = np.inf
        for cut in (0.0, 1e-9, 1e-7, 1e-5, 1e-3, np.inf):
            scale = 1.0 / np.sqrt(np.where(dz <= 1.0 + cut, dz, 1.0))
            zs = scale[:, None] * z * scale[None, :]
            best = min(best, float(np.real(np.sum(rho * zs.T))))
        return best

    x = np.zeros(d)
    steps = 0
    upper = 0.0
    if allowed.size:
        xa, upper, steps = _max_diagonal_subtraction(lam, q[allowed], tol, max_newton, dual_bound)
        x[allowed] = xa
    # with no admissible index the feasible set is {0} and gamma = 1 exactly
    total = float(x.sum())
    gamma = min(1.0, max(0.0, 1.0 - total))
    gamma_lower = max(0.0, 1.0 - upper)

    if total > 0:
        sigma = np.diag(x / total).astype(complex)
        sigma_used = True
    else:
        sigma = np.eye(d, dtype=complex) / d
        sigma_used = False
    tau = rho - np.diag(x)
    tau = 0.5 * (tau + tau.conj().T) / (1.0 - total)
    return CoherentWeightResult(gamma, sigma, tau, steps, gamma_lower, sigma_used=sigma_used)


def c_b_upper_bound(rho, tol: float = 1e-8) -> float:
    """Upper bound on the Boolean coherence measure via the coherent weight.

    A value strictly below 1 rules out deterministic purification.
    """
    return coherent_weight(rho, tol).gamma


def trivial_measure_counterexample() -> tuple[float, float]:
    """Show that the 0/1 coherence indicator fails convexity on mixed states.

    Returns ``(C(rho), (C(rho1) + C(rho2)) / 2)`` for rho1 = |+><+|,
    rho2 = |0><0| and their equal mixture rho; the result is (1, 0.5).
    """

    def indicator(state):
        return 0.0 if c_l1(state) == 0.0 else 1.0

    rho1 = np.array([[0.5, 0.5], [0.5, 0.5]])
    rho2 = np.array([[1.0, 0.0], [0.0, 0.0]])
    rho = 0.5 * rho1 + 0.5 * rho2
    return indicator(rho), 0.5 * indicator(rho1) + 0.5 * indicator(rho2)
