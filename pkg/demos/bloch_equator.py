"""
The equatorial disk
===================

For a qubit the enhancement ceiling is r sin(theta) / sqrt(1 - r^2 cos^2 theta),
equal to the current coherence r sin(theta) only when cos(theta) = 0. Mixed
equatorial states are also full rank, so they can be neither purified nor
enhanced.
"""

import math
import sys

from coherence_nogo.cli import bloch_csv
from coherence_nogo.qubit import BlochVector, bloch_region_grid, qubit_ceiling

for theta in (math.pi / 2, math.pi / 3, math.pi / 6):
    b = BlochVector(0.8, theta)
    coherence = b.r * math.sin(theta)
    print(f"theta={theta:.4f}  C_l1={coherence:.6f}  ceiling={qubit_ceiling(b):.6f}")

cells = bloch_region_grid(6, 9, 4)
stuck = [c for c in cells if not c.enhanceable and not c.purifiable_possible]
print(f"\n{len(stuck)} of {len(cells)} grid cells are stuck; their polar angles:",
      sorted({round(c.bloch.theta, 6) for c in stuck}))

# Text rendering of one azimuthal slice: rows are theta, columns are r.
# '#' stuck, '+' enhanceable, 'o' pure and not enhanceable.
print()
for j in range(9):
    row = cells[j * 4 :: 9 * 4]
    marks = "".join("#" if c in stuck else "+" if c.enhanceable else "o" for c in row)
    print(f"theta={row[0].bloch.theta:5.3f} {marks}")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(bloch_csv(20, 40, 8))
    print("\nfull 20x40x8 map written to", sys.argv[1])
