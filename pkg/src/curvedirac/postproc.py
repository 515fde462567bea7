"""Observables derived from solved modes: densities, peaks, spectrum fits."""

from dataclasses import dataclass

import numpy as np
import scipy.signal

from .analytic import RadialProfile, composite_simpson, normalize_density


@dataclass(frozen=True)
class SpinorDensity:
    """Jointly normalized |psi_A|^2, |psi_B|^2 and their sum for one mode."""

    grid: object
    densityA: np.ndarray
    densityB: np.ndarray
    rho: np.ndarray
    kappaA: float
    kappaB: float
    spec: object
    m: float
    index: int


@dataclass(frozen=True)
class SpectrumFit:
    slope: float
    intercept: float
    r_squared: float
    n_used: int
    degenerate: bool = False


def density_from_solutions(pair, index):
    """SpinorDensity of the index-th mode (1-based) of a solution pair.

    Squares the two mode columns, normalizes them jointly, and records
    both kappa values (the A and B spectra generally differ).
    """
    solA, solB = pair
    if not 1 <= index <= min(solA.kappas.size, solB.kappas.size):
        raise IndexError(f"index {index} outside the solved range")
    grid = solA.grid
    a = RadialProfile(grid, solA.modes[:, index - 1])
    b = RadialProfile(grid, solB.modes[:, index - 1])
    scale, rho = normalize_density(a, b)
    densityA = (scale * a.values) ** 2
    densityB = (scale * b.values) ** 2
    total = 2.0 * np.pi * composite_simpson(grid.nodes() * rho.values, grid.h)
    if abs(total - 1.0) > 1e-8:
        raise ArithmeticError(f"density integral {total} drifted from 1")
    return SpinorDensity(grid, densityA, densityB, rho.values,
                         float(solA.kappas[index - 1]),
                         float(solB.kappas[index - 1]),
                         solA.spec, solA.qn.m if solA.qn else None, index)


def find_peaks(profile, min_prominence=None):
    """Local maxima of a radial profile as an array of (r, value) rows.

    Three-point maxima filtered by prominence (default 1% of the profile
    maximum), returned in order of increasing r.
    """
    values = profile.values
    if min_prominence is None:
        min_prominence = 0.01 * float(np.max(values))
    if min_prominence <= 0:
        raise ValueError("min_prominence must be positive")
    idx, _ = scipy.signal.find_peaks(values, prominence=min_prominence)
    r = profile.grid.nodes()
    return np.column_stack((r[idx], values[idx]))


def fit_spectrum(kappas):
    """Ordinary least squares of kappa_n against n = 1..N.

    A constant input sequence has no defined r^2; it is reported as 0 with
    the degenerate flag set and slope forced to 0.
    """
    kappas = np.asarray(kappas, dtype=float)
    if kappas.size < 5:
        raise ValueError("need at least 5 eigenvalues to fit")
    n = np.arange(1, kappas.size + 1, dtype=float)
    slope, intercept = np.polyfit(n, kappas, 1)
    ss_tot = float(np.sum((kappas - kappas.mean()) ** 2))
    if ss_tot <= 1e-30 * max(1.0, float(np.abs(kappas).max()) ** 2):
        return SpectrumFit(0.0, float(kappas.mean()), 0.0, kappas.size, True)
    resid = kappas - (slope * n + intercept)
    r_squared = 1.0 - float(np.sum(resid ** 2)) / ss_tot
    return SpectrumFit(float(slope), float(intercept), r_squared,
                       kappas.size, False)
