"""Qubit states on the Bloch sphere.

A qubit with Bloch coordinates ``(r, theta, phi)`` has l1-coherence
``r sin(theta)`` and enhancement ceiling ``r sin(theta) / sqrt(1 - r^2 cos^2(theta))``;
the two coincide exactly on the equatorial plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .enhancement import enhancement_check
from .errors import IncoherentInput, Unphysical, WrongDimension
from .measures import c_l1
from .purification import purifiable_possible
from .states import as_density_matrix

EQUATOR_TOL = 1e-10
RADIUS_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    r: float
    theta: float
    phi: float = 0.0

    @property
    def cartesian(self) -> tuple[float, float, float]:
        s = self.r * math.sin(self.theta)
        return s * math.cos(self.phi), s * math.sin(self.phi), self.r * math.cos(self.theta)


@dataclass(frozen=True)
class BlochCell:
    bloch: BlochVector
    c_l1: float
    ceiling: float
    enhanceable: bool
    purifiable_possible: bool


def bloch_to_density(b: BlochVector) -> np.ndarray:
    if b.r > 1.0 + RADIUS_TOL:
        raise Unphysical(f"Bloch radius {b.r!r} exceeds 1")
    if b.r < 0:
        raise Unphysical(f"Bloch radius {b.r!r} is negative")
    z = b.r * math.cos(b.theta)
    off = b.r * math.sin(b.theta) * np.exp(-1j * b.phi)
    return 0.5 * np.array([[1.0 + z, off], [np.conj(off), 1.0 - z]], dtype=complex)


def density_to_bloch(rho) -> BlochVector:
    """Inverse of :func:`bloch_to_density`; ``phi = 0`` on the z axis."""
    rho = np.asarray(rho)
    if rho.shape != (2, 2):
        raise WrongDimension(f"expected a 2x2 density matrix, got shape {rho.shape}")
    rho = as_density_matrix(rho)
    x = 2.0 * rho[1, 0].real
    y = 2.0 * rho[1, 0].imag
    z = float((rho[0, 0] - rho[1, 1]).real)
    transverse = math.hypot(x, y)
    r = math.hypot(transverse, z)
    if r == 0.0:
        return BlochVector(0.0, 0.0, 0.0)
    theta = math.atan2(transverse, z)
    phi = math.atan2(y, x) % (2.0 * math.pi) if transverse > 0 else 0.0
    if phi >= 2.0 * math.pi:
        phi = 0.0
    return BlochVector(min(r, 1.0), theta, phi)


def qubit_ceiling(b: BlochVector) -> float:
    """Closed-form enhancement ceiling of a qubit."""
    z = b.r * math.cos(b.theta)
    return b.r * abs(math.sin(b.theta)) / math.sqrt(1.0 - z * z)


def qubit_enhanceable(b: BlochVector) -> bool:
    """A coherent qubit can be enhanced unless it lies on the equator."""
    if b.r * abs(math.sin(b.theta)) <= EQUATOR_TOL:
        raise IncoherentInput("state on the z axis carries no coherence")
    return abs(math.cos(b.theta)) > EQUATOR_TOL


def theta_grid(n_theta: int) -> np.ndarray:
    """Polar angles strictly inside (0, pi), with pi/2 always on the grid."""
    j = np.arange(n_theta) - n_theta // 2
    return math.pi / 2 + j * (math.pi / (n_theta + 1))


def bloch_cell(b: BlochVector) -> BlochCell:
    rho = bloch_to_density(b)
    coherence = c_l1(rho)
    report = enhancement_check(rho)
    return BlochCell(b, coherence, report.ceiling, report.enhanceable, purifiable_possible(rho))


def bloch_region_grid(n_r: int, n_theta: int, n_phi: int) -> list[BlochCell]:
    """Classify a uniform grid of coherent qubits, ordered by r, then theta, then phi.

    Radii are ``k / n_r`` for ``k = 1..n_r`` and azimuths ``2 pi j / n_phi``.
    """
    if min(n_r, n_theta, n_phi) < 2:
        raise ValueError("every grid count must be at least 2")
    radii = np.arange(1, n_r + 1) / n_r
    thetas = theta_grid(n_theta)
    phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
    return [
        bloch_cell(BlochVector(float(r), float(t), float(p)))
        for r in radii
        for t in thetas
        for p in phis
    ]

