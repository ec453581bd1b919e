"""
Raising l1-coherence by post-selection
======================================

A stochastic strictly incoherent operation keeps only some Kraus outcomes and
renormalizes. It can push the l1-coherence of a state up, but never past
lambda_max(M) - 1, where M rescales |rho| by the populations.
"""

import numpy as np

from coherence_nogo import apply_ssio, c_l1, enhancement_ceiling, m_matrix, optimal_kraus, enhancement_check
from coherence_nogo.oracle import ssio_sweep

# A qubit with unequal populations and some coherence.
rho = np.array([[0.75, 0.25], [0.25, 0.25]])
print("C_l1(rho)        =", c_l1(rho))
print("M(rho) =\n", m_matrix(rho).round(6))
print("ceiling          =", enhancement_ceiling(rho), " (1/sqrt(3) =", 1 / np.sqrt(3), ")")

# One diagonal filter already hits the ceiling.
channel = optimal_kraus(rho)
out, p = apply_ssio(channel, rho)
print("filter diag      =", np.diag(channel.kraus[0]).real.round(6))
print("after filtering  =", c_l1(out), "with success probability", p)

# Ten thousand random sSIOs do no better.
print("best random sSIO =", ssio_sweep(rho, 10_000, seed=0))

# Balance the populations and the filter has nothing left to do.
balanced = np.array([[0.5, 0.25], [0.25, 0.5]])
report = enhancement_check(balanced)
print("\nbalanced qubit: enhanceable =", report.enhanceable, " residual =", report.condition_residual)

# In higher dimension the stuck states are those whose populations are
# proportional to each row's off-diagonal mass.
rho3 = np.array([[0.4, 0.15, 0.1], [0.15, 0.35, -0.12], [0.1, -0.12, 0.25]])
row_mass = np.abs(rho3).sum(axis=1) - np.diag(rho3)
print("\nqutrit populations      ", np.diag(rho3))
print("row mass / C_l1         ", (row_mass / c_l1(rho3)).round(4))
report = enhancement_check(rho3)
print("enhanceable:", report.enhanceable, " gain available:", round(report.gain, 6))
