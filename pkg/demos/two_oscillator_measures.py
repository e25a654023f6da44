"""Walk through the measures of a coupled oscillator pair, step by step.

Two unit-mass oscillators with spring constants A and B and a bilinear
coupling C have normal-mode frequencies obtained by rotating the coupling
matrix [[A, C/2], [C/2, B]] to diagonal form. Filling each normal mode
with the same action and averaging over its phase angle gives a classical
covariance matrix, and every "how mixed is one oscillator on its own?"
question below is asked of that matrix alone.
"""

import numpy as np

from oscent.covariance import classical_covariance, reduce_modes
from oscent.measures import (
    measure_report,
    one_mode_sigma_closed_form,
    sigma_tilde,
    two_mode_reduced_purity,
)
from oscent.models import TwoMode, normal_modes, two_mode_angles

A, B, C = 5.0, 20.0, 10.0
model = TwoMode(A=A, B=B, C=C)

angles = two_mode_angles(model)
print(f"pair: A={A:g}  B={B:g}  C={C:g}")
print(f"mixing angle   beta  = {angles.angle:.12f} rad")
print(f"frequencies    omega = {angles.omega1:.12f}, {angles.omega2:.12f}")

# The covariance of the uniform-action, phase-averaged ensemble.
modes = normal_modes(model)
cov = classical_covariance(modes, np.ones(2))
print("\nposition block  qq =\n", cov.qq)
print("momentum block  pp =\n", cov.pp)

# The whole system is "pure": both normalized spectral widths sit at 1/2.
print("\nwhole-system widths:", sigma_tilde(cov))

# Keeping only the first oscillator leaves a mixed single-mode state whose
# width exceeds 1/2 -- the second oscillator carried away correlations.
reduced = reduce_modes(cov, [0])
sigma = sigma_tilde(reduced)[0]
print(f"one-oscillator width sigma = {sigma:.15f}")
print(f"closed form               = {one_mode_sigma_closed_form(A, B, C):.15f}")

# Purity and the entropy family, for a few orders alpha.
report = measure_report(reduced, alphas=(0.9, 2.0, 8.0), label="osc 1")
print(f"\npurity          = {report.purity:.15f}")
print(f"angle form      = {two_mode_reduced_purity(model):.15f}")
print(f"linear entropy  = {report.linear_entropy:.15f}")
print(f"entropy (limit) = {report.von_neumann:.15f}")
for alpha in sorted(report.families):
    fam = report.families[alpha]
    print(f"alpha = {alpha:>4g}:  mu = {fam.purity:.12f}   "
          f"S = {fam.tsallis:.12f}   H = {fam.renyi:.12f}")

# Finally, sweep the coupling from zero toward the edge of stability
# (4AB - C^2 = 0 at C = 20): the reduced width grows monotonically.
print("\n   C      sigma          purity")
for c in np.linspace(0.0, 19.5, 9):
    s = one_mode_sigma_closed_form(A, B, c)
    print(f"{c:5.2f}   {s:.9f}   {1.0 / (2.0 * s):.9f}")
