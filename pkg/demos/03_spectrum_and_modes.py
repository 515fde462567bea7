"""Solve both bump shapes and inspect spectra and mode densities.

Solves the radial eigenproblem on each surface for both sublattices at
m = 1/2, fits the spectrum, and compares the fifth mode's probability
density between the two geometries.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from curvedirac import (
    GAUSSIAN,
    VOLCANO,
    RadialGrid,
    RadialProfile,
    SurfaceSpec,
    density_from_solutions,
    find_peaks,
    fit_spectrum,
    solve_spinor_pair,
)

GRID = RadialGrid(0.01, 5.0, 0.002)
CASES = (
    ("gaussian", SurfaceSpec(GAUSSIAN, 1.3, 1.0)),
    ("volcano", SurfaceSpec(VOLCANO, 1.3, 2.0)),
)

fig, axes = plt.subplots(1, 3, figsize=(14, 4.2))
n = np.arange(1, 11)
for name, spec in CASES:
    pair = solve_spinor_pair(spec, 0.5, GRID, 10)
    solA, solB = pair
    fit = fit_spectrum(solA.kappas)
    print(f"{name}: kappa_n (A) =",
          np.array2string(solA.kappas, precision=4))
    print(f"{name}: kappa_n (B) =",
          np.array2string(solB.kappas, precision=4))
    print(f"{name}: linear fit slope = {fit.slope:.4f}, "
          f"r^2 = {fit.r_squared:.6f}")
    axes[0].plot(n, solA.kappas, "o-", label=f"{name}, A")
    axes[0].plot(n, solB.kappas, "s--", label=f"{name}, B")

    density = density_from_solutions(pair, 5)
    r = GRID.nodes()
    ax = axes[1] if name == "gaussian" else axes[2]
    ax.plot(r, density.densityA, label="|psi_A|^2")
    ax.plot(r, density.densityB, label="|psi_B|^2")
    ax.plot(r, density.rho, color="k", lw=1, label="rho")
    ax.set_title(f"{name}: mode 5 density")
    ax.set_xlabel("r")
    ax.legend(fontsize=8)
    peaks = find_peaks(RadialProfile(GRID, density.rho))
    print(f"{name}: mode-5 rho peaks at r =",
          np.array2string(peaks[:, 0], precision=3))
    print()

axes[0].set_xlabel("n")
axes[0].set_ylabel("kappa_n")
axes[0].set_title("spectra, m = 1/2")
axes[0].legend(fontsize=8)
fig.tight_layout()
fig.savefig("demos/spectrum_and_modes.png", dpi=140)
print("wrote demos/spectrum_and_modes.png")
print()
print("Both spectra grow linearly with n, as for a free particle in a")
print("finite disc, but the curved surfaces shift each level and split")
print("the sublattices: the B modes pile density onto the bump region")
print("while the A modes stay closer to plane-wave behavior.")
