"""Verify the solver against the exactly solvable flat limit.

With the bump switched off the radial problem has Bessel solutions and
the eigenvalues are roots of a two-point boundary determinant, found
here by classical root bracketing.  The matrix eigenvalues must approach
those roots at second order in the grid spacing.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from curvedirac import (
    FLAT,
    QuantumNumbers,
    RadialGrid,
    SurfaceSpec,
    assemble,
    eigen_solve,
    flat_reference_kappas,
)

qn = QuantumNumbers.from_m(0.5)
reference = flat_reference_kappas(qn, 0.01, 5.01, 5)
print("determinant roots:", np.array2string(reference, precision=8))

hs = np.array([0.02, 0.01, 0.005, 0.0025])
errors = np.empty((hs.size, 5))
for i, h in enumerate(hs):
    grid = RadialGrid(0.01, 5.01, h)
    sol = eigen_solve(assemble(SurfaceSpec(FLAT), qn, grid), 5)
    errors[i] = np.abs(sol.kappas - reference)
    print(f"h = {h:<7} max |kappa - root| = {errors[i].max():.3e}")

orders = np.log2(errors[:-1] / errors[1:])
print("observed orders per halving:")
for i in range(orders.shape[0]):
    print(f"  {hs[i]} -> {hs[i + 1]}:",
          np.array2string(orders[i], precision=3))

fig, ax = plt.subplots(figsize=(6, 4.2))
for j in range(5):
    ax.loglog(hs, errors[:, j], "o-", label=f"kappa_{j + 1}")
ax.loglog(hs, errors[-1, 0] * (hs / hs[-1])**2, "k--", label="h^2 guide")
ax.set_xlabel("grid spacing h")
ax.set_ylabel("|kappa - determinant root|")
ax.set_title("flat-limit convergence")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("demos/flat_limit_convergence.png", dpi=140)
print("wrote demos/flat_limit_convergence.png")
