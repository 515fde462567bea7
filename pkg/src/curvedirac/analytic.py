"""Closed-form radial physics on the curved surface.

Effective potentials for the two sublattices, the approximate spinor
solutions built from Bessel functions, the flat-limit residual check, and
the probability-density normalization shared by analytic and numerical
profiles.
"""

from dataclasses import dataclass

import numpy as np

from . import geometry
from .specialfn import bessel_j

LATTICE_A = "A"
LATTICE_B = "B"


@dataclass(frozen=True)
class QuantumNumbers:
    """Total angular momentum m (stored as the integer 2m) and sublattice.

    m is half-integer, so twice_m is odd; storing the doubled value keeps
    equality checks exact.  Sublattice B is related to A by m -> -m.
    """

    twice_m: int
    lattice: str = LATTICE_A

    def __post_init__(self):
        if self.twice_m % 2 == 0:
            raise ValueError("twice_m must be odd (m is half-integer)")
        if self.lattice not in (LATTICE_A, LATTICE_B):
            raise ValueError("lattice must be 'A' or 'B'")

    @classmethod
    def from_m(cls, m, lattice=LATTICE_A):
        twice = 2.0 * m
        if twice != round(twice):
            raise ValueError(f"m = {m} is not an exact half-integer")
        return cls(int(round(twice)), lattice)

    @property
    def m(self):
        return self.twice_m / 2.0

    @property
    def lattice_sign(self):
        """+1 for sublattice A (upper sign in m +/- F), -1 for B."""
        return 1.0 if self.lattice == LATTICE_A else -1.0

    @property
    def bessel_order(self):
        """Integer Bessel order (1 + 2m)/2 for A, (1 - 2m)/2 for B."""
        if self.lattice == LATTICE_A:
            return (1 + self.twice_m) // 2
        return (1 - self.twice_m) // 2

    def negated(self):
        return QuantumNumbers(-self.twice_m, self.lattice)


@dataclass(frozen=True)
class RadialProfile:
    """Values of one radial function sampled on a RadialGrid."""

    grid: object
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.grid.n_nodes,):
            raise ValueError("profile length must match the grid node count")
        if not np.all(np.isfinite(vals)):
            raise ValueError("profile contains non-finite values")


def composite_simpson(y, h):
    """Composite Simpson integral of uniformly sampled y with step h.

    An odd interval count is handled by closing the last three intervals
    with the 3/8 rule, keeping the overall O(h^4) accuracy.
    """
    y = np.asarray(y, dtype=float)
    n = y.size - 1
    if n < 1:
        raise ValueError("need at least two samples")
    if n == 1:
        return 0.5 * h * (y[0] + y[1])
    if n % 2 == 0:
        core, tail = y, 0.0
    else:
        core = y[: n - 2]
        tail = 3.0 * h / 8.0 * (y[n - 3] + 3.0 * y[n - 2] + 3.0 * y[n - 1] + y[n])
    s = core[0] + core[-1] + 4.0 * core[1:-1:2].sum() + 2.0 * core[2:-1:2].sum()
    return h / 3.0 * s + tail


def effective_potential_simple(spec, qn, r):
    """Reduced effective potential -m/r + A_theta (A) or +m/r + A_theta (B)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    return -qn.lattice_sign * qn.m / r + geometry.pseudo_gauge(spec, r)


def _first_derivative_bracket(spec, r):
    # F (F' + 2 A_theta'), the expression whose radial derivative feeds the
    # full effective potential
    return geometry.fermi_factor(spec, r) * (
        geometry.fermi_factor_prime(spec, r) + 2.0 * geometry.pseudo_gauge_prime(spec, r)
    )


def effective_potential_full(spec, qn, r):
    """Full effective potential of the transformed radial equation.

    U^2 = -F A_theta' - A_theta^2 + (m/r^2)(m +/- F)
          + (1/2) d/dr[ F (F' + 2 A_theta') ] + (1/4) F^2 (F' + 2 A_theta)^2

    with the upper sign on sublattice A.  The outer d/dr is a centered
    difference of step 1e-6 applied to the analytically evaluated bracket.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    m = qn.m
    F = geometry.fermi_factor(spec, r)
    Fp = geometry.fermi_factor_prime(spec, r)
    ath = geometry.pseudo_gauge(spec, r)
    athp = geometry.pseudo_gauge_prime(spec, r)
    step = np.minimum(1e-6, 0.5 * r)
    dbracket = (_first_derivative_bracket(spec, r + step)
                - _first_derivative_bracket(spec, r - step)) / (2.0 * step)
    return (-F * athp - ath ** 2 + (m / r ** 2) * (m + qn.lattice_sign * F)
            + 0.5 * dbracket + 0.25 * F ** 2 * (Fp + 2.0 * ath) ** 2)


def analytic_spinor(spec, qn, kappa, r):
    """Approximate radial spinor component (unnormalized).

    Gaussian: exp(alpha/4 e^(-2r^2/b^2)) sqrt(r) J_n(kappa r);
    volcano:  r^(1/4) J_n(kappa r)  (the r^(-1/4) sqrt(r) prefactor);
    flat:     sqrt(r) J_n(kappa r);
    with n = (1 + 2m)/2 on sublattice A and (1 - 2m)/2 on B.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    if spec.kind == geometry.GAUSSIAN:
        prefactor = np.exp(0.25 * spec.alpha * np.exp(-2.0 * (r / spec.width) ** 2)) * np.sqrt(r)
    elif spec.kind == geometry.VOLCANO:
        prefactor = r ** 0.25
    else:
        prefactor = np.sqrt(r)
    return prefactor * bessel_j(qn.bessel_order, kappa * r)


def klein_gordon_residual(qn, kappa, chi):
    """Max-norm finite-difference residual of the flat reduced equation.

    Checks -chi'' + m(m +/- 1)/r^2 chi = kappa^2 chi on the interior nodes
    of chi's grid with the centered three-point second derivative.
    """
    grid = chi.grid
    if grid.n_nodes < 16:
        raise ValueError("grid too coarse for a meaningful residual (< 16 nodes)")
    r = grid.nodes()
    y = chi.values
    h = grid.h
    coeff = qn.m * (qn.m + qn.lattice_sign)
    interior = slice(1, -1)
    d2 = (y[:-2] - 2.0 * y[1:-1] + y[2:]) / h ** 2
    res = -d2 + (coeff / r[interior] ** 2) * y[interior] - kappa ** 2 * y[interior]
    return float(np.max(np.abs(res)))


def normalize_density(psiA, psiB):
    """Jointly normalize a spinor pair so that 2 pi * int r rho dr = 1.

    Returns (scale, rho) where both inputs are to be multiplied by scale
    and rho is the already-scaled total density |psi_A|^2 + |psi_B|^2.
    """
    if psiA.grid != psiB.grid:
        raise ValueError("spinor components must share one grid")
    r = psiA.grid.nodes()
    raw = psiA.values ** 2 + psiB.values ** 2
    total = 2.0 * np.pi * composite_simpson(r * raw, psiA.grid.h)
    if total <= 0.0:
        raise ValueError("cannot normalize an identically zero spinor")
    scale = 1.0 / np.sqrt(total)
    rho = RadialProfile(psiA.grid, scale ** 2 * raw)
    return scale, rho
