"""Two summary fits for ring-lattice negativity data.

First: with a nearly unpinned ring (k -> 0), the negativity of the split
(0..n1-1 | n1..99) of a 100-site block follows a logarithmic law in the
chord length, E_N = (b1/4) ln((block/pi) sin(pi n1/block)) + b2. A
straight-line fit recovers b1 and b2.

Second: at fixed windows, E_N grows with the neighbor coupling kappa and
saturates; the four-parameter curve a - b/(kappa^c + d) summarizes the
whole dependence.
"""

import numpy as np

from oscent.experiments import (
    fit_adjacent_cft,
    fit_kappa_asymptote,
    lattice_adjacent_sweep,
    lattice_size_sweep,
    saturation_curve,
)

# --- logarithmic law of the split point ------------------------------------

n1_grid = tuple(range(0, 101, 5))
table = lattice_adjacent_sweep(n1_grid, kappas=(4.0, 64.0), n=200, k=1e-4,
                               block=100)
print("straight-line fit of E_N against ln((block/pi) sin(pi n1/block)):")
for kappa in (4.0, 64.0):
    pick = table.column("kappa") == kappa
    fit = fit_adjacent_cft(table.column("n1")[pick],
                           table.column("log_negativity")[pick], block=100)
    print(f"  kappa = {kappa:2.0f}:  b1 = {fit.params['b1']:.4f}   "
          f"b2 = {fit.params['b2']:.4f}   rms = {fit.rms_residual:.2e}")

# --- saturation in the coupling ----------------------------------------------

kappas = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)
table = lattice_size_sweep((500,), kappas=kappas, k=0.1, n1=10, n2=10)
e = table.column("log_negativity")
print("\nE_N of adjacent 10-site windows on a 500-site ring:")
for kappa, value in zip(kappas, e):
    print(f"  kappa = {kappa:4.0f}   E_N = {value:.10f}")

fit = fit_kappa_asymptote(np.array(kappas), e)
print("\nfit of E_N(kappa) = a - b/(kappa^c + d):")
for name in "abcd":
    print(f"  {name} = {fit.params[name]:.6f}")
print(f"  rms residual = {fit.rms_residual:.2e}")
print(f"  saturation value a - b/(inf + d) -> a = {fit.params['a']:.4f}")

# The curve through the data, for eyeballing the fit quality.
print("\n  kappa    data           fit")
smooth = saturation_curve(np.array(kappas), **fit.params)
for kappa, data, model in zip(kappas, e, smooth):
    print(f"{kappa:7.0f}   {data:.8f}   {model:.8f}")
