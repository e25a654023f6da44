"""A two-oscillator chain whose coupling mixes positions with momenta.

The generalized chain adds a q_i Y_i p_i term to each site, so the
Hamiltonian is stable only while K - Y^2 stays positive definite. Along
the way to the stability edge the one-oscillator reduction grows wider
and its purity falls. The position-momentum coupling also leaves a
nonzero q-p cross block in the covariance, which the pair-correlation
printout below makes visible.
"""

import numpy as np

from oscent.covariance import classical_covariance, reduce_modes
from oscent.errors import UnstableSystemError
from oscent.experiments import sweep_ghoc_y2
from oscent.models import TwoModeGeneralized, normal_modes, stability

X1 = X2 = 2.0
Z = 1.0

# Map the stability window in Y2 by brute force: the default parameters
# lose stability at |Y2| = sqrt(8/3) ~ 1.6330.
edge = None
for y2 in np.linspace(1.5, 1.7, 201):
    report = stability(TwoModeGeneralized(X1=X1, X2=X2, Y1=0.0, Y2=y2, Z=Z))
    if not report.stable:
        edge = y2
        break
print(f"first unstable grid point: Y2 = {edge:.4f} "
      f"(exact edge sqrt(8/3) = {np.sqrt(8.0 / 3.0):.4f})")

# The covariance of a coupled instance carries a live q-p cross block.
model = TwoModeGeneralized(X1=X1, X2=X2, Y1=0.0, Y2=1.0, Z=Z)
cov = classical_covariance(normal_modes(model), np.ones(2))
print("\nq-p cross block at Y2 = 1:\n", cov.qp)

# Reduced width and purity of oscillator 1 along a Y2 grid.
table = sweep_ghoc_y2(np.linspace(0.0, 1.6, 9), x1=X1, x2=X2, z=Z,
                      alphas=(2.0,))
print("\n  Y2      sigma          purity         entropy")
for row in table.to_records():
    print(f"{row['Y2']:5.2f}   {row['sigma']:.9f}   {row['purity']:.9f}"
          f"   {row['von_neumann']:.9f}")

# Past the edge the normal-mode construction refuses to proceed.
try:
    classical_covariance(
        normal_modes(TwoModeGeneralized(X1=X1, X2=X2, Y1=0.0, Y2=1.65, Z=Z)),
        np.ones(2))
except UnstableSystemError as exc:
    print(f"\nY2 = 1.65 raises UnstableSystemError: {exc}")

# For comparison: the one-mode reduction of the same chain, computed two
# independent ways (full pipeline vs the symplectic spectrum route).
from oscent.measures import purity_from_determinant, sigma_tilde

reduced = reduce_modes(cov, [0])
sigma = sigma_tilde(reduced)[0]
print(f"\nY2 = 1: sigma = {sigma:.12f}")
print(f"        purity from determinant = {purity_from_determinant(reduced):.12f}")
print(f"        purity from width       = {1.0 / (2.0 * sigma):.12f}")
