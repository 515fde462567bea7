"""Finite-difference eigensolver for the decoupled radial equations.

The second-order radial equation for each sublattice,

    F^2 psi'' + F (F' + 2 A_theta) psi'
        + [F A_theta' - (m/r^2)(m +/- F) + A_theta^2] psi = -kappa^2 psi,

is discretized with centered differences on a uniform grid, Dirichlet at
r_min (omitted ghost) and Neumann at r_max (reflected ghost), giving a
tridiagonal matrix whose eigenvalues are kappa_n^2.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.special

from . import geometry
from .analytic import (LATTICE_A, QuantumNumbers, RadialProfile,
                       composite_simpson, effective_potential_full,
                       normalize_density)

_POSITIVE_FLOOR = 1e-10


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid on (r_min, r_max], nodes r_min + i*h, i = 1..N.

    n_interior counts the nodes strictly below r_max; the node at r_max is
    kept as an unknown because the boundary condition there is Neumann.
    """

    r_min: float
    r_max: float
    h: float

    def __post_init__(self):
        if self.r_min <= 0:
            raise ValueError("r_min must be positive")
        if self.r_max <= self.r_min:
            raise ValueError("r_max must exceed r_min")
        if self.h <= 0:
            raise ValueError("h must be positive")
        span = self.r_max - self.r_min
        steps = round(span / self.h)
        if steps < 2 or abs(span - steps * self.h) > 1e-6 * self.h:
            raise ValueError("r_max - r_min must be an integer multiple of h")
        if steps - 1 < 16:
            raise ValueError("grid too coarse: fewer than 16 interior nodes")

    @property
    def n_interior(self):
        return round((self.r_max - self.r_min) / self.h) - 1

    @property
    def n_nodes(self):
        return self.n_interior + 1

    def nodes(self):
        r = self.r_min + self.h * np.arange(1, self.n_nodes + 1)
        # guard against accumulated rounding pushing the last node past r_max
        r[-1] = min(r[-1], self.r_max)
        return r

    def halved(self):
        return RadialGrid(self.r_min, self.r_max, self.h / 2.0)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Three diagonals plus the provenance needed to interpret eigenvectors."""

    sub: np.ndarray
    diag: np.ndarray
    super: np.ndarray
    spec: object = field(default=None, compare=False)
    qn: object = field(default=None, compare=False)
    grid: object = field(default=None, compare=False)

    def __post_init__(self):
        sub = np.asarray(self.sub, dtype=float)
        diag = np.asarray(self.diag, dtype=float)
        sup = np.asarray(self.super, dtype=float)
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "super", sup)
        n = diag.size
        if sub.shape != (n - 1,) or sup.shape != (n - 1,):
            raise ValueError("off-diagonals must have length n - 1")
        if not (np.all(np.isfinite(sub)) and np.all(np.isfinite(diag))
                and np.all(np.isfinite(sup))):
            raise ValueError("operator entries must be finite")

    @property
    def n(self):
        return self.diag.size

    def dense(self):
        m = np.diag(self.diag)
        m += np.diag(self.sub, -1)
        m += np.diag(self.super, 1)
        return m


@dataclass(frozen=True)
class EigenSolution:
    """Discrete spectrum kappa_n (ascending) and density-normalized modes.

    modes has one column per kappa.  method records which eigensolver path
    ran ('sturm' after symmetrization, 'dense-qr' otherwise) and
    imag_residue the largest imaginary part accepted on the dense path.
    """

    kappas: np.ndarray
    modes: np.ndarray
    spec: geometry.SurfaceSpec
    qn: QuantumNumbers
    grid: RadialGrid
    eigencount: int
    method: str
    imag_residue: float


def _assemble_from_coefficients(grid, c2, c1, c0, spec=None, qn=None):
    """Tridiagonal matrix for -(c2 psi'' + c1 psi' + c0 psi) = lambda psi.

    Centered three-point stencils; Dirichlet at r_min by dropping the left
    ghost, Neumann at r_max by folding the reflected ghost psi_{N+1} =
    psi_{N-1} into the last row.
    """
    h = grid.h
    sub = -(c2[1:] / h ** 2 - c1[1:] / (2.0 * h))
    diag = 2.0 * c2 / h ** 2 - c0
    sup = -(c2[:-1] / h ** 2 + c1[:-1] / (2.0 * h))
    sub[-1] = -2.0 * c2[-1] / h ** 2
    return TridiagonalOperator(sub, diag, sup, spec=spec, qn=qn, grid=grid)


def assemble(spec, qn, grid):
    """Discretize the decoupled radial equation as M psi = kappa^2 psi.

    Coefficients: c2 = F^2, c1 = F (F' + 2 A_theta),
    c0 = F A_theta' - (m/r^2)(m +/- F) + A_theta^2, upper sign on
    sublattice A, evaluated at the grid nodes.
    """
    r = grid.nodes()
    m = qn.m
    F = geometry.fermi_factor(spec, r)
    Fp = geometry.fermi_factor_prime(spec, r)
    ath = geometry.pseudo_gauge(spec, r)
    athp = geometry.pseudo_gauge_prime(spec, r)
    c2 = F ** 2
    c1 = F * (Fp + 2.0 * ath)
    c0 = F * athp - (m / r ** 2) * (m + qn.lattice_sign * F) + ath ** 2
    return _assemble_from_coefficients(grid, c2, c1, c0, spec=spec, qn=qn)


def assemble_transformed(spec, qn, grid):
    """Discretize the transformed equation -chi'' + U2_full chi = kappa^2 chi.

    Alternative route through the full effective potential; its spectrum
    differs from assemble()'s at finite amplitude because the similarity
    function relating psi and chi is only known approximately.
    """
    r = grid.nodes()
    c2 = np.ones_like(r)
    c1 = np.zeros_like(r)
    c0 = -effective_potential_full(spec, qn, r)
    return _assemble_from_coefficients(grid, c2, c1, c0, spec=spec, qn=qn)


def similarity_scaling(op):
    """Diagonal d with d_{i+1}/d_i = sqrt(super_i/sub_i), or None.

    D M D^-1 is symmetric with off-diagonal sign(super)*sqrt(sub*super)
    whenever every product sub_i*super_i is positive.
    """
    prod = op.sub * op.super
    if not np.all(prod > 0):
        return None
    ratios = 0.5 * (np.log(np.abs(op.super)) - np.log(np.abs(op.sub)))
    logd = np.concatenate(([0.0], np.cumsum(ratios)))
    return np.exp(logd)


def _normalize_mode(grid, v):
    r = grid.nodes()
    total = 2.0 * math.pi * composite_simpson(r * v ** 2, grid.h)
    if total <= 0.0:
        raise ValueError("cannot normalize a zero eigenvector")
    v = v / math.sqrt(total)
    big = np.abs(v).max()
    idx = int(np.argmax(np.abs(v) > 1e-8 * big))
    if v[idx] < 0:
        v = -v
    return v


def eigen_solve(op, count):
    """Smallest `count` eigenvalues lambda > 1e-10 of op, with modes.

    When every sub_i*super_i > 0 the operator is symmetrized by a diagonal
    similarity transform and solved by bisection on Sturm sequences plus
    inverse iteration; otherwise a dense QR iteration runs (LAPACK
    Hessenberg QR, machine-precision deflation, tighter than 1e-12) and
    eigenvalues with imaginary residue above 1e-8*|lambda| are discarded.
    kappa_n = sqrt(lambda_n); modes are normalized by the density rule
    2 pi * int r psi^2 dr = 1 with first non-negligible entry positive.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if count > 50:
        raise ValueError("count above 50 is not supported")
    if op.grid is None:
        raise ValueError("operator carries no grid; build it via assemble()")
    n = op.n
    d = similarity_scaling(op)
    if d is not None:
        off = np.sign(op.super) * np.sqrt(op.sub * op.super)
        all_vals = scipy.linalg.eigvalsh_tridiagonal(op.diag, off)
        n_pos = int(np.count_nonzero(all_vals > _POSITIVE_FLOOR))
        if n_pos < count:
            raise ValueError(
                f"requested {count} positive eigenvalues but only {n_pos} exist")
        lo = n - n_pos
        vals, vecs = scipy.linalg.eigh_tridiagonal(
            op.diag, off, select="i", select_range=(lo, lo + count - 1))
        vecs = vecs / d[:, None]
        method = "sturm"
        residue = 0.0
    else:
        vals_c, vecs_c = scipy.linalg.eig(op.dense())
        keep = ((vals_c.real > _POSITIVE_FLOOR)
                & (np.abs(vals_c.imag) <= 1e-8 * np.abs(vals_c)))
        if int(keep.sum()) < count:
            raise ValueError(
                f"requested {count} positive eigenvalues but only "
                f"{int(keep.sum())} exist")
        order = np.argsort(vals_c.real[keep])[:count]
        residue = float(np.abs(vals_c.imag[keep][order]).max())
        vals = vals_c.real[keep][order]
        vecs = vecs_c.real[:, keep][:, order]
        method = "dense-qr"
    modes = np.column_stack([_normalize_mode(op.grid, vecs[:, j])
                             for j in range(vecs.shape[1])])
    return EigenSolution(np.sqrt(vals), modes, op.spec, op.qn, op.grid,
                         count, method, residue)


def solve_spinor_pair(spec, m, grid, count):
    """Spectra and jointly normalized modes for both sublattices.

    The B component solves the A equation at -m (the two operators
    coincide entrywise), so solutionB is literally the (A, -m) solution;
    mode columns are then rescaled pairwise so each (psi_A, psi_B) pair
    carries unit total probability.
    """
    qnA = QuantumNumbers.from_m(m, LATTICE_A)
    solA = eigen_solve(assemble(spec, qnA, grid), count)
    solB = eigen_solve(assemble(spec, qnA.negated(), grid), count)
    modesA = solA.modes.copy()
    modesB = solB.modes.copy()
    for j in range(count):
        scale, _ = normalize_density(RadialProfile(grid, modesA[:, j]),
                                     RadialProfile(grid, modesB[:, j]))
        modesA[:, j] *= scale
        modesB[:, j] *= scale
    return (replace(solA, modes=modesA), replace(solB, modes=modesB))


@dataclass(frozen=True)
class ConvergenceStudy:
    hs: np.ndarray
    kappas: np.ndarray
    orders: np.ndarray


def convergence_study(spec, qn, base_grid, levels, grids=None):
    """kappa_1..kappa_5 across successively halved grids, with observed
    convergence orders p_n = log2 of consecutive difference ratios.

    grids overrides the internally halved sequence (mainly for testing);
    repeated grids are rejected since the difference ratios degenerate.
    """
    if levels < 3:
        raise ValueError("need at least 3 levels to estimate an order")
    if grids is None:
        grids = [base_grid]
        for _ in range(levels - 1):
            grids.append(grids[-1].halved())
    if len(grids) != levels:
        raise ValueError("grids must supply one grid per level")
    for a, b in zip(grids, grids[1:]):
        if a == b:
            raise ValueError("identical grids at consecutive levels")
    kappas = np.empty((levels, 5))
    for i, g in enumerate(grids):
        kappas[i] = eigen_solve(assemble(spec, qn, g), 5).kappas
    diffs = np.abs(np.diff(kappas, axis=0))
    orders = np.log2(diffs[:-1] / diffs[1:])
    return ConvergenceStudy(np.array([g.h for g in grids]), kappas, orders)


def flat_reference_kappas(qn, r_min, r_max, count, kappa_max=None):
    """First `count` flat-limit eigenvalues from the continuum problem.

    Roots kappa of u(r_min) v'(r_max) - v(r_min) u'(r_max) = 0 with
    u = sqrt(r) J_nu(kappa r), v = sqrt(r) Y_nu(kappa r), the boundary
    determinant of the flat equation with psi(r_min) = 0, psi'(r_max) = 0.
    Independent of the finite-difference path: Bessel values and
    derivatives come from scipy.special and roots from Brent's method.
    """
    nu = qn.bessel_order

    def val_der(r, kappa, fn, fnp):
        v = math.sqrt(r) * fn(nu, kappa * r)
        dv = (0.5 / math.sqrt(r) * fn(nu, kappa * r)
              + math.sqrt(r) * kappa * fnp(nu, kappa * r))
        return v, dv

    def det(kappa):
        u0, _ = val_der(r_min, kappa, scipy.special.jv, scipy.special.jvp)
        v0, _ = val_der(r_min, kappa, scipy.special.yv, scipy.special.yvp)
        _, u1 = val_der(r_max, kappa, scipy.special.jv, scipy.special.jvp)
        _, v1 = val_der(r_max, kappa, scipy.special.yv, scipy.special.yvp)
        return u0 * v1 - v0 * u1

    if kappa_max is None:
        kappa_max = (count + abs(nu) + 4) * math.pi / (r_max - r_min) + 5.0
    step = 0.05 * math.pi / (r_max - r_min)
    roots = []
    k_prev = step
    f_prev = det(k_prev)
    k = k_prev + step
    while len(roots) < count and k < kappa_max:
        f = det(k)
        if f_prev == 0.0:
            roots.append(k_prev)
        elif f_prev * f < 0:
            roots.append(scipy.optimize.brentq(det, k_prev, k,
                                               xtol=1e-13, rtol=1e-14))
        k_prev, f_prev = k, f
        k += step
    if len(roots) < count:
        raise ValueError(f"found {len(roots)} of {count} requested roots "
                         f"below kappa = {kappa_max}")
    return np.array(roots[:count])
