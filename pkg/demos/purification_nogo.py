"""
When a mixed state cannot be purified
=====================================

If rho = lambda * sigma + (1 - lambda) * tau with sigma diagonal and lambda > 0,
no free operation turns rho into a pure coherent state with certainty. The
coherent weight measures how little of rho has to be "coherent".
"""

import numpy as np

from coherence_nogo import coherent_weight, full_rank_witness, purifiability_check
from coherence_nogo.states import random_density_matrix

rho = np.array([[0.75, 0.25], [0.25, 0.25]])

# Full rank: mixing in I/n with weight n * lambda_min always works.
w = full_rank_witness(rho)
print("incoherent weight from I/2:", w.weight)
print("tau =\n", w.tau.real.round(6))
print("max reconstruction error:", np.abs(w.reconstruct() - rho).max())

# The optimal split uses a general diagonal sigma and does better.
cw = coherent_weight(rho)
print("\ncoherent weight gamma =", cw.gamma, " (certified >=", cw.gamma_lower, ")")
print("sigma =", np.diag(cw.sigma).real.round(4))

# Three reference cases.
cases = {
    "|+><+|": np.full((2, 2), 0.5),
    "I/2": np.eye(2) / 2,
    "|+><+| (+) |2><2|": np.block([[np.full((2, 2), 0.35), np.zeros((2, 1))], [np.zeros((1, 2)), np.array([[0.3]])]]),
}
print()
for name, state in cases.items():
    rep = purifiability_check(state)
    print(f"{name:<20} gamma={rep.gamma:.6f} full_rank={rep.full_rank!s:<5} purifiable_possible={rep.purifiable_possible}")

# A generic singular state has no basis vector in its range, so nothing
# incoherent splits off and the weight is 1; full rank always leaves room.
rng = np.random.default_rng(3)
print()
for rank in (1, 2, 3, 4):
    gammas = [coherent_weight(random_density_matrix(4, rank, rng)).gamma for _ in range(20)]
    print(f"d=4 rank={rank}: gamma in [{min(gammas):.4f}, {max(gammas):.4f}]")
