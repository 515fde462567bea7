"""Command-line front end emitting deterministic CSV/JSON datasets.

Subcommands: geometry (surface fields), analytic (potentials and
closed-form spinors), solve (spectrum, eigenfunctions, summary JSON),
converge (mesh refinement study), compare (flat numerics against the
continuum boundary-determinant roots).

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from . import geometry, postproc, solver
from .analytic import (LATTICE_A, LATTICE_B, QuantumNumbers, RadialProfile,
                       analytic_spinor, effective_potential_full,
                       effective_potential_simple, normalize_density)

_COMMANDS = ("geometry", "analytic", "solve", "converge", "compare")
_SURFACES = (geometry.GAUSSIAN, geometry.VOLCANO, geometry.FLAT)
_CONFIG_KEYS = ("surface", "amplitude", "width", "m", "r_min", "r_max", "h",
                "eigencount", "out", "kappa", "index", "levels")
_DEFAULTS = {
    "surface": geometry.GAUSSIAN,
    "amplitude": 1.0,
    "width": 1.0,
    "m": "1/2",
    "r_min": 0.01,
    "r_max": 5.0,
    "h": 0.001,
    "eigencount": 10,
    "out": "out",
    "kappa": 2.35,
    "index": "5",
    "levels": 3,
}


def parse_m(value):
    """Half-integer m from '1/2'-style fractions or exact 0.5-multiples.

    Returns twice m as an odd integer; anything that is not exactly a
    half-odd-integer (including whole integers) is rejected.
    """
    try:
        frac = Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"m = {value!r} is not a number or fraction") from exc
    twice = frac * 2
    if twice.denominator != 1 or twice.numerator % 2 == 0:
        raise ValueError(f"m = {value!r} is not a half-odd-integer")
    return int(twice)


def _m_label(twice_m):
    return f"{twice_m}/2"


def _parse_indices(value):
    try:
        indices = tuple(int(tok) for tok in str(value).split(","))
    except ValueError as exc:
        raise ValueError(f"index = {value!r} is not a comma list of integers") from exc
    if not indices or any(i < 1 for i in indices):
        raise ValueError("eigenfunction indices must be >= 1")
    return indices


@dataclass(frozen=True)
class RunConfig:
    command: str
    surface: str
    amplitude: float
    width: float
    twice_m: int
    r_min: float
    r_max: float
    h: float
    eigencount: int
    out: str
    kappa: float
    indices: tuple
    levels: int

    @property
    def m(self):
        return self.twice_m / 2.0

    def surface_spec(self):
        return geometry.SurfaceSpec(self.surface, self.amplitude, self.width)

    def grid(self):
        return solver.RadialGrid(self.r_min, self.r_max, self.h)

    def echo(self):
        """Accepted-key dictionary that reproduces this run via --config."""
        return {
            "surface": self.surface,
            "amplitude": self.amplitude,
            "width": self.width,
            "m": _m_label(self.twice_m),
            "r_min": self.r_min,
            "r_max": self.r_max,
            "h": self.h,
            "eigencount": self.eigencount,
            "out": self.out,
            "kappa": self.kappa,
            "index": ",".join(str(i) for i in self.indices),
            "levels": self.levels,
        }


def build_config(command, values):
    """Validated RunConfig from merged option values (strings or numbers)."""
    surface = str(values["surface"])
    if surface not in _SURFACES:
        raise ValueError(f"surface must be one of {', '.join(_SURFACES)}")
    twice_m = parse_m(values["m"])
    eigencount = int(values["eigencount"])
    if not 1 <= eigencount <= 50:
        raise ValueError("eigencount must be between 1 and 50")
    indices = _parse_indices(values["index"])
    if command == "solve" and any(i > eigencount for i in indices):
        raise ValueError("eigenfunction index exceeds eigencount")
    levels = int(values["levels"])
    if levels < 3:
        raise ValueError("levels must be at least 3")
    kappa = float(values["kappa"])
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    cfg = RunConfig(
        command=command,
        surface=surface,
        amplitude=float(values["amplitude"]),
        width=float(values["width"]),
        twice_m=twice_m,
        r_min=float(values["r_min"]),
        r_max=float(values["r_max"]),
        h=float(values["h"]),
        eigencount=eigencount,
        out=str(values["out"]),
        kappa=kappa,
        indices=indices,
        levels=levels,
    )
    cfg.surface_spec()
    cfg.grid()
    return cfg


def _fmt(x):
    if x == 0:
        return "0"
    return f"{x:.17g}"


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _cmd_geometry(cfg):
    spec = cfg.surface_spec()
    r = cfg.grid().nodes()
    fields = geometry.geometry_fields(spec, r)
    r_lower = cfg.r_min if spec.kind == geometry.VOLCANO else 0.0
    mu = geometry.geometric_phase_profile(spec, r, r_lower)
    z = geometry.profile_height(spec, r)
    rows = zip(r, z, fields.f, fields.fermi_factor, fields.pseudo_gauge,
               fields.curvature, mu)
    _write_csv(os.path.join(cfg.out, f"geometry_{cfg.surface}.csv"),
               ["r", "z", "f", "F", "A_theta", "R", "mu"], rows)


def _cmd_analytic(cfg):
    spec = cfg.surface_spec()
    grid = cfg.grid()
    r = grid.nodes()
    qnA = QuantumNumbers(cfg.twice_m, LATTICE_A)
    qnB = QuantumNumbers(cfg.twice_m, LATTICE_B)
    psiA = RadialProfile(grid, analytic_spinor(spec, qnA, cfg.kappa, r))
    psiB = RadialProfile(grid, analytic_spinor(spec, qnB, cfg.kappa, r))
    scale, _ = normalize_density(psiA, psiB)
    rows = zip(r,
               effective_potential_simple(spec, qnA, r),
               effective_potential_simple(spec, qnB, r),
               effective_potential_full(spec, qnA, r),
               effective_potential_full(spec, qnB, r),
               (scale * psiA.values) ** 2,
               (scale * psiB.values) ** 2)
    _write_csv(os.path.join(cfg.out, "analytic.csv"),
               ["r", "U2_simple_A", "U2_simple_B", "U2_full_A", "U2_full_B",
                "psiA2", "psiB2"], rows)


def _fit_dict(kappas):
    if kappas.size < 5:
        return None
    fit = postproc.fit_spectrum(kappas)
    return {"slope": fit.slope, "intercept": fit.intercept,
            "r_squared": fit.r_squared, "n_used": fit.n_used,
            "degenerate": fit.degenerate}


def _cmd_solve(cfg):
    started = time.perf_counter()
    spec = cfg.surface_spec()
    grid = cfg.grid()
    pair = solver.solve_spinor_pair(spec, cfg.m, grid, cfg.eigencount)
    solA, solB = pair
    n_col = np.arange(1, cfg.eigencount + 1)
    _write_csv(os.path.join(cfg.out, "spectrum.csv"),
               ["n", "kappa_A", "kappa_B"],
               zip(n_col, solA.kappas, solB.kappas))
    r = grid.nodes()
    peaks = {}
    for index in cfg.indices:
        density = postproc.density_from_solutions(pair, index)
        _write_csv(os.path.join(cfg.out, f"eigenfunction_{index}.csv"),
                   ["r", "psiA", "psiB", "rho"],
                   zip(r, solA.modes[:, index - 1], solB.modes[:, index - 1],
                       density.rho))
        found = postproc.find_peaks(RadialProfile(grid, density.rho))
        peaks[f"rho_{index}"] = [[float(a), float(b)] for a, b in found]
    summary = {
        "schema": 1,
        "config": cfg.echo(),
        "kappa_A": [float(k) for k in solA.kappas],
        "kappa_B": [float(k) for k in solB.kappas],
        "fit_A": _fit_dict(solA.kappas),
        "fit_B": _fit_dict(solB.kappas),
        "peaks": peaks,
        "method": solA.method,
        "wall_clock_seconds": time.perf_counter() - started,
    }
    with open(os.path.join(cfg.out, "summary.json"), "w", newline="") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_converge(cfg):
    spec = cfg.surface_spec()
    qn = QuantumNumbers(cfg.twice_m, LATTICE_A)
    study = solver.convergence_study(spec, qn, cfg.grid(), cfg.levels)
    _write_csv(os.path.join(cfg.out, "converge_levels.csv"),
               ["level", "h", "kappa_1", "kappa_2", "kappa_3", "kappa_4",
                "kappa_5"],
               ((i + 1, study.hs[i], *study.kappas[i])
                for i in range(cfg.levels)))
    _write_csv(os.path.join(cfg.out, "converge_orders.csv"),
               ["triplet", "p_1", "p_2", "p_3", "p_4", "p_5"],
               ((j + 1, *study.orders[j]) for j in range(len(study.orders))))


def _cmd_compare(cfg):
    flat = geometry.SurfaceSpec(geometry.FLAT)
    grid = cfg.grid()
    qn = QuantumNumbers(cfg.twice_m, LATTICE_A)
    numeric = solver.eigen_solve(solver.assemble(flat, qn, grid),
                                 cfg.eigencount).kappas
    reference = solver.flat_reference_kappas(qn, cfg.r_min, cfg.r_max,
                                             cfg.eigencount)
    _write_csv(os.path.join(cfg.out, "compare.csv"),
               ["n", "kappa_numeric", "kappa_reference", "abs_error"],
               zip(np.arange(1, cfg.eigencount + 1), numeric, reference,
                   np.abs(numeric - reference)))


_RUNNERS = {
    "geometry": _cmd_geometry,
    "analytic": _cmd_analytic,
    "solve": _cmd_solve,
    "converge": _cmd_converge,
    "compare": _cmd_compare,
}


def run(config):
    """Execute a validated RunConfig; 0 on success, 3 on numerical failure."""
    os.makedirs(config.out, exist_ok=True)
    try:
        _RUNNERS[config.command](config)
    except (ValueError, ArithmeticError, scipy.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="curvedirac",
        description="Dirac spectra and geometry fields on curved surfaces")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option defaults")
    common.add_argument("--surface", choices=_SURFACES)
    common.add_argument("--amplitude", type=float)
    common.add_argument("--width", type=float)
    common.add_argument("--m", help="half-integer, e.g. 1/2 or 1.5")
    common.add_argument("--r-min", dest="r_min", type=float)
    common.add_argument("--r-max", dest="r_max", type=float)
    common.add_argument("--h", type=float)
    common.add_argument("--eigencount", type=int)
    common.add_argument("--out", help="output directory")
    common.add_argument("--kappa", type=float,
                        help="wavenumber for analytic profiles")
    common.add_argument("--index",
                        help="comma list of 1-based eigenfunction indices")
    common.add_argument("--levels", type=int,
                        help="refinement levels for converge")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "geometry": "sample surface fields to CSV",
        "analytic": "effective potentials and closed-form spinors to CSV",
        "solve": "eigenspectrum, eigenfunctions, and a JSON summary",
        "converge": "mesh-refinement study of kappa_1..kappa_5",
        "compare": "flat-surface numerics against continuum roots",
    }
    for name in _COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _merge_options(args):
    values = dict(_DEFAULTS)
    if args.config is not None:
        with open(args.config) as fh:
            try:
                loaded = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = sorted(set(loaded) - set(_CONFIG_KEYS))
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        values.update(loaded)
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return values


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        values = _merge_options(args)
        config = build_config(args.command, values)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
