"""Dirac fermions on axially symmetric curved surfaces.

Geometry fields and pseudo-gauge potentials for Gaussian and volcano
bumps, closed-form radial spinors, a finite-difference eigensolver for
the decoupled radial equations, and post-processing into densities,
peaks, and spectrum fits.
"""

from .analytic import (LATTICE_A, LATTICE_B, QuantumNumbers, RadialProfile,
                       analytic_spinor, composite_simpson,
                       effective_potential_full, effective_potential_simple,
                       klein_gordon_residual, normalize_density)
from .geometry import (FLAT, GAUSSIAN, VOLCANO, GeometryFields, SurfaceSpec,
                       christoffel_symbols, curvature_scalar, fermi_factor,
                       fermi_factor_prime, geometric_phase,
                       geometric_phase_profile, geometry_fields,
                       metric_deformation, profile_height, pseudo_gauge,
                       pseudo_gauge_prime)
from .postproc import (SpectrumFit, SpinorDensity, density_from_solutions,
                       find_peaks, fit_spectrum)
from .solver import (ConvergenceStudy, EigenSolution, RadialGrid,
                     TridiagonalOperator, assemble, assemble_transformed,
                     convergence_study, eigen_solve, flat_reference_kappas,
                     similarity_scaling, solve_spinor_pair)
from .specialfn import bessel_j

__version__ = "0.1.0"

__all__ = [
    "FLAT", "GAUSSIAN", "VOLCANO",
    "SurfaceSpec", "GeometryFields", "QuantumNumbers", "RadialProfile",
    "RadialGrid", "TridiagonalOperator", "EigenSolution", "ConvergenceStudy",
    "SpinorDensity", "SpectrumFit",
    "LATTICE_A", "LATTICE_B",
    "profile_height", "metric_deformation", "fermi_factor",
    "fermi_factor_prime", "pseudo_gauge", "pseudo_gauge_prime",
    "curvature_scalar", "christoffel_symbols", "geometric_phase",
    "geometric_phase_profile", "geometry_fields",
    "bessel_j",
    "effective_potential_simple", "effective_potential_full",
    "analytic_spinor", "klein_gordon_residual", "normalize_density",
    "composite_simpson",
    "assemble", "assemble_transformed", "eigen_solve", "similarity_scaling",
    "solve_spinor_pair", "convergence_study", "flat_reference_kappas",
    "density_from_solutions", "find_peaks", "fit_spectrum",
    "__version__",
]
