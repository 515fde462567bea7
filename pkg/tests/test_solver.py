"""Finite-difference eigensolver tests.

Reference eigenvalues for the flat surface come from the Bessel
determinant oracle in flat_reference_kappas, which shares no code with
the matrix path.  Frozen values below were produced by that oracle.
"""

import numpy as np
import pytest

from curvedirac import (
    FLAT,
    GAUSSIAN,
    VOLCANO,
    QuantumNumbers,
    RadialGrid,
    SurfaceSpec,
    TridiagonalOperator,
    assemble,
    composite_simpson,
    convergence_study,
    eigen_solve,
    fermi_factor,
    fermi_factor_prime,
    flat_reference_kappas,
    pseudo_gauge,
    similarity_scaling,
    solve_spinor_pair,
)

QN = QuantumNumbers.from_m(0.5)

# roots of the flat-disc determinant on [0.01, 5.01], order nu = 1
FLAT_ORACLE = np.array([
    0.4323128965565138,
    1.0833386429318714,
    1.7157003064533523,
    2.345181355946887,
    2.97365744204375,
])


class TestRadialGrid:
    def test_node_counts(self):
        grid = RadialGrid(0.01, 5.0, 0.001)
        assert grid.n_interior == 4989
        assert grid.n_nodes == 4990

    def test_nodes_exclude_r_min_include_r_max(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        r = grid.nodes()
        assert r.shape == (grid.n_nodes,)
        assert r[0] == pytest.approx(0.05)
        assert r[0] > grid.r_min
        assert r[-1] <= grid.r_max
        assert r[-1] == pytest.approx(grid.r_max, rel=1e-14)
        assert np.all(np.diff(r) > 0)

    def test_halved_doubles_resolution(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        fine = grid.halved()
        assert fine.h == grid.h / 2
        assert fine.n_nodes == 2 * grid.n_nodes

    def test_rejects_bad_extents(self):
        with pytest.raises(ValueError):
            RadialGrid(0.0, 5.0, 0.001)
        with pytest.raises(ValueError):
            RadialGrid(-0.01, 5.0, 0.001)
        with pytest.raises(ValueError):
            RadialGrid(2.0, 2.0, 0.001)
        with pytest.raises(ValueError):
            RadialGrid(2.0, 1.0, 0.001)
        with pytest.raises(ValueError):
            RadialGrid(0.01, 5.0, -0.1)

    def test_rejects_incommensurate_step(self):
        with pytest.raises(ValueError, match="integer multiple"):
            RadialGrid(0.01, 5.0, 0.003)

    def test_rejects_too_few_interior_nodes(self):
        # 16 steps -> 15 interior nodes, one short of the minimum
        with pytest.raises(ValueError, match="16 interior"):
            RadialGrid(0.01, 0.33, 0.02)
        RadialGrid(0.01, 0.35, 0.02)  # 17 steps is accepted


class TestTridiagonalOperator:
    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="length n - 1"):
            TridiagonalOperator(np.zeros(3), np.ones(4), np.zeros(2))

    def test_nonfinite_entries_rejected(self):
        diag = np.ones(4)
        diag[2] = np.inf
        with pytest.raises(ValueError, match="finite"):
            TridiagonalOperator(np.zeros(3), diag, np.zeros(3))

    def test_dense_matches_diagonals(self):
        op = TridiagonalOperator(np.array([1.0, 2.0]),
                                 np.array([5.0, 6.0, 7.0]),
                                 np.array([3.0, 4.0]))
        m = op.dense()
        assert m.shape == (3, 3)
        assert m[1, 0] == 1.0 and m[2, 1] == 2.0
        assert m[0, 1] == 3.0 and m[1, 2] == 4.0
        assert np.all(np.diag(m) == op.diag)


class TestAssemble:
    def test_flat_stencil_closed_form(self):
        """Flat surface: c2 = 1, c1 = 0, c0 = -m(m+1)/r^2 for lattice A."""
        grid = RadialGrid(0.01, 2.01, 0.04)
        op = assemble(SurfaceSpec(FLAT), QN, grid)
        r = grid.nodes()
        h = grid.h
        assert op.n == grid.n_nodes
        np.testing.assert_allclose(op.diag, 2.0 / h**2 + 0.75 / r**2,
                                   rtol=1e-14)
        np.testing.assert_allclose(op.super, np.full(op.n - 1, -1.0 / h**2),
                                   rtol=1e-14)
        np.testing.assert_allclose(op.sub[:-1], np.full(op.n - 2, -1.0 / h**2),
                                   rtol=1e-14)
        # Neumann fold doubles the last subdiagonal entry
        assert op.sub[-1] == pytest.approx(-2.0 / h**2, rel=1e-14)

    def test_operator_size_at_production_resolution(self):
        grid = RadialGrid(0.01, 5.0, 0.001)
        op = assemble(SurfaceSpec(GAUSSIAN, 1.3, 1.0), QN, grid)
        assert op.n == 4990

    @pytest.mark.parametrize("surface,amp,width", [
        (GAUSSIAN, 1.3, 1.0),
        (VOLCANO, 1.3, 2.0),
    ])
    @pytest.mark.parametrize("m", [0.5, 1.5, 2.5])
    def test_sublattice_b_equals_a_negated(self, surface, amp, width, m):
        """B at +m and A at -m produce the identical matrix, bit for bit."""
        spec = SurfaceSpec(surface, amp, width)
        grid = RadialGrid(0.01, 2.01, 0.04)
        opB = assemble(spec, QuantumNumbers.from_m(m, "B"), grid)
        opA = assemble(spec, QuantumNumbers.from_m(-m, "A"), grid)
        np.testing.assert_array_equal(opB.sub, opA.sub)
        np.testing.assert_array_equal(opB.diag, opA.diag)
        np.testing.assert_array_equal(opB.super, opA.super)

    def test_metadata_attached(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        spec = SurfaceSpec(GAUSSIAN, 1.3, 1.0)
        op = assemble(spec, QN, grid)
        assert op.spec == spec
        assert op.qn == QN
        assert op.grid == grid


class TestSimilarityScaling:
    def test_scaling_symmetrizes(self):
        grid = RadialGrid(0.01, 2.01, 0.02)
        op = assemble(SurfaceSpec(GAUSSIAN, 1.3, 1.0), QN, grid)
        d = similarity_scaling(op)
        assert d is not None
        assert d.shape == (op.n,)
        assert np.all(d > 0)
        sym = np.diag(d) @ op.dense() @ np.diag(1.0 / d)
        asym = np.abs(sym - sym.T).max()
        assert asym <= 1e-9 * np.abs(sym).max()

    def test_returns_none_when_product_changes_sign(self):
        grid = RadialGrid(0.005, 2.005, 0.05)
        op = assemble(SurfaceSpec(VOLCANO, 6.0, 1.0), QN, grid)
        assert similarity_scaling(op) is None


class TestEigenSolve:
    def test_flat_spectrum_matches_oracle(self):
        grid = RadialGrid(0.01, 5.01, 0.01)
        sol = eigen_solve(assemble(SurfaceSpec(FLAT), QN, grid), 5)
        assert sol.method == "sturm"
        np.testing.assert_allclose(sol.kappas, FLAT_ORACLE, rtol=2e-4)

    def test_flat_error_shrinks_second_order(self):
        """Halving h should cut the oracle error by about 4."""
        errs = {}
        for h in (0.02, 0.01):
            grid = RadialGrid(0.01, 5.01, h)
            sol = eigen_solve(assemble(SurfaceSpec(FLAT), QN, grid), 5)
            errs[h] = np.abs(sol.kappas - FLAT_ORACLE)
        ratios = errs[0.02] / errs[0.01]
        assert np.all(ratios > 3.4)
        assert np.all(ratios < 4.6)

    def test_kappas_strictly_increasing(self):
        grid = RadialGrid(0.01, 3.01, 0.01)
        sol = eigen_solve(assemble(SurfaceSpec(GAUSSIAN, 1.3, 1.0), QN, grid), 8)
        assert np.all(np.diff(sol.kappas) > 0)
        assert np.all(sol.kappas > 0)

    def test_modes_density_normalized(self):
        grid = RadialGrid(0.01, 3.01, 0.01)
        sol = eigen_solve(assemble(SurfaceSpec(GAUSSIAN, 1.3, 1.0), QN, grid), 8)
        r = grid.nodes()
        for j in range(8):
            total = 2 * np.pi * composite_simpson(r * sol.modes[:, j]**2, grid.h)
            assert total == pytest.approx(1.0, rel=1e-10)

    def test_modes_orthogonal_under_scaling(self):
        """Eigenvectors of the symmetrized matrix stay mutually orthogonal
        after mapping back, so d-weighted modes must have a diagonal Gram
        matrix."""
        grid = RadialGrid(0.01, 3.01, 0.01)
        op = assemble(SurfaceSpec(GAUSSIAN, 1.3, 1.0), QN, grid)
        sol = eigen_solve(op, 8)
        d = similarity_scaling(op)
        w = sol.modes * d[:, None]
        w = w / np.linalg.norm(w, axis=0)
        gram = w.T @ w - np.eye(8)
        assert np.abs(gram).max() <= 1e-8

    def test_first_mode_entry_positive(self):
        grid = RadialGrid(0.01, 3.01, 0.01)
        sol = eigen_solve(assemble(SurfaceSpec(GAUSSIAN, 1.3, 1.0), QN, grid), 5)
        r = grid.nodes()
        for j in range(5):
            v = sol.modes[:, j]
            lead = v[np.abs(v) > 1e-8 * np.abs(v).max()][0]
            assert lead > 0

    def test_discrete_boundary_conditions_exact(self):
        """Reconstruct the two boundary samples the stencil eliminated.

        Row 1 dropped the Dirichlet value psi(r_min); the last row folded
        the Neumann ghost psi(r_max + h) onto psi(r_max - h).  Solving the
        row identities for those samples must give 0 and psi(r_max - h)
        back, up to roundoff, on flat and curved surfaces alike.
        """
        grid = RadialGrid(0.01, 5.0, 0.001)
        h = grid.h
        for spec in (SurfaceSpec(FLAT), SurfaceSpec(GAUSSIAN, 1.3, 1.0)):
            op = assemble(spec, QN, grid)
            sol = eigen_solve(op, 5)
            r = grid.nodes()
            F = fermi_factor(spec, r)
            c2 = F**2
            c1 = F * (fermi_factor_prime(spec, r) + 2 * pseudo_gauge(spec, r))
            sub_first = -(c2[0] / h**2 - c1[0] / (2 * h))
            sup_last = -(c2[-1] / h**2 + c1[-1] / (2 * h))
            for j in range(5):
                v = sol.modes[:, j]
                lam = sol.kappas[j]**2
                scale = np.abs(v).max()
                wall = ((lam - op.diag[0]) * v[0] - op.super[0] * v[1])
                assert abs(wall / sub_first) <= 1e-6 * scale
                ghost = ((lam - op.diag[-1]) * v[-1]
                         - (op.sub[-1] - sup_last) * v[-2]) / sup_last
                assert abs(ghost - v[-2]) / (2 * h) <= 1e-6 * scale

    def test_modes_extrapolate_toward_zero_at_r_min(self):
        grid = RadialGrid(0.01, 5.0, 0.001)
        sol = eigen_solve(assemble(SurfaceSpec(FLAT), QN, grid), 5)
        for j in range(5):
            v = sol.modes[:, j]
            at_wall = 3 * v[0] - 3 * v[1] + v[2]
            assert abs(at_wall) <= 5e-6 * np.abs(v).max()

    def test_count_bounds(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        op = assemble(SurfaceSpec(FLAT), QN, grid)
        with pytest.raises(ValueError, match="at least 1"):
            eigen_solve(op, 0)
        with pytest.raises(ValueError, match="above 50"):
            eigen_solve(op, 51)

    def test_rejects_operator_without_grid(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        op = assemble(SurfaceSpec(FLAT), QN, grid)
        bare = TridiagonalOperator(op.sub, op.diag, op.super)
        with pytest.raises(ValueError, match="no grid"):
            eigen_solve(bare, 3)

    def test_reports_available_count_when_exhausted(self):
        grid = RadialGrid(0.01, 0.37, 0.02)
        op = assemble(SurfaceSpec(FLAT), QN, grid)
        with pytest.raises(ValueError,
                           match="requested 30 positive eigenvalues but "
                                 "only 18 exist"):
            eigen_solve(op, 30)

    def test_dense_fallback_agrees_with_sturm(self):
        """A tall volcano on a coarse grid defeats the symmetrization (the
        off-diagonal product changes sign), forcing the dense path.  Its
        spectrum must still track a fine-grid sturm solve."""
        spec = SurfaceSpec(VOLCANO, 6.0, 1.0)
        coarse = eigen_solve(
            assemble(spec, QN, RadialGrid(0.005, 2.005, 0.05)), 4)
        assert coarse.method == "dense-qr"
        assert coarse.imag_residue <= 1e-8 * coarse.kappas.max()**2
        fine = eigen_solve(
            assemble(spec, QN, RadialGrid(0.005, 2.005, 0.00125)), 4)
        assert fine.method == "sturm"
        np.testing.assert_allclose(coarse.kappas, fine.kappas, rtol=1e-2)

    def test_solution_metadata(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        spec = SurfaceSpec(FLAT)
        sol = eigen_solve(assemble(spec, QN, grid), 3)
        assert sol.spec == spec
        assert sol.qn == QN
        assert sol.grid == grid
        assert sol.eigencount == 3
        assert sol.modes.shape == (grid.n_nodes, 3)


class TestSolveSpinorPair:
    def test_b_solution_is_a_at_negated_m(self):
        spec = SurfaceSpec(GAUSSIAN, 1.3, 1.0)
        grid = RadialGrid(0.01, 3.01, 0.005)
        solA, solB = solve_spinor_pair(spec, 0.5, grid, 4)
        solA_neg, solB_neg = solve_spinor_pair(spec, -0.5, grid, 4)
        np.testing.assert_array_equal(solB.kappas, solA_neg.kappas)
        np.testing.assert_array_equal(solB.modes, solA_neg.modes)
        np.testing.assert_array_equal(solA.kappas, solB_neg.kappas)
        np.testing.assert_array_equal(solA.modes, solB_neg.modes)

    def test_pair_carries_unit_total_density(self):
        spec = SurfaceSpec(GAUSSIAN, 1.3, 1.0)
        grid = RadialGrid(0.01, 3.01, 0.005)
        solA, solB = solve_spinor_pair(spec, 0.5, grid, 4)
        r = grid.nodes()
        for j in range(4):
            rho = solA.modes[:, j]**2 + solB.modes[:, j]**2
            total = 2 * np.pi * composite_simpson(r * rho, grid.h)
            assert total == pytest.approx(1.0, rel=1e-10)

    def test_component_spectra_differ_on_curved_surface(self):
        spec = SurfaceSpec(GAUSSIAN, 1.3, 1.0)
        grid = RadialGrid(0.01, 3.01, 0.005)
        solA, solB = solve_spinor_pair(spec, 0.5, grid, 4)
        assert np.all(np.abs(solA.kappas - solB.kappas) > 1e-4)


class TestConvergenceStudy:
    def test_flat_orders_near_two(self):
        study = convergence_study(SurfaceSpec(FLAT), QN,
                                  RadialGrid(0.01, 2.01, 0.04), 3)
        assert study.hs.shape == (3,)
        assert study.kappas.shape == (3, 5)
        assert study.orders.shape == (1, 5)
        np.testing.assert_allclose(study.hs, [0.04, 0.02, 0.01])
        assert study.orders[0, 0] == pytest.approx(2.0, abs=0.2)
        assert np.all(study.orders > 1.5)
        assert np.all(study.orders < 2.5)

    def test_kappa_five_stable_to_four_digits_at_production_h(self):
        spec = SurfaceSpec(GAUSSIAN, 1.3, 1.0)
        k5 = []
        for h in (1e-3, 5e-4):
            sol = eigen_solve(assemble(spec, QN, RadialGrid(0.01, 5.0, h)), 5)
            k5.append(sol.kappas[-1])
        assert float(f"{k5[0]:.4g}") == float(f"{k5[1]:.4g}")

    def test_needs_three_levels(self):
        with pytest.raises(ValueError, match="3 levels"):
            convergence_study(SurfaceSpec(FLAT), QN,
                              RadialGrid(0.01, 2.01, 0.04), 2)

    def test_rejects_repeated_grids(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        with pytest.raises(ValueError, match="identical grids"):
            convergence_study(SurfaceSpec(FLAT), QN, grid, 3,
                              grids=[grid, grid, grid])

    def test_rejects_wrong_grid_count(self):
        grid = RadialGrid(0.01, 2.01, 0.04)
        with pytest.raises(ValueError, match="one grid per level"):
            convergence_study(SurfaceSpec(FLAT), QN, grid, 3, grids=[grid])


class TestFlatReferenceKappas:
    def test_values_ascending_and_frozen(self):
        ref = flat_reference_kappas(QN, 0.01, 5.01, 5)
        assert ref.shape == (5,)
        assert np.all(np.diff(ref) > 0)
        np.testing.assert_allclose(ref, FLAT_ORACLE, rtol=1e-12)

    def test_respects_count(self):
        ref = flat_reference_kappas(QN, 0.01, 5.01, 3)
        np.testing.assert_allclose(ref, FLAT_ORACLE[:3], rtol=1e-12)

    def test_kappa_max_too_small(self):
        with pytest.raises(ValueError, match="found 1 of 5"):
            flat_reference_kappas(QN, 0.01, 5.01, 5, kappa_max=1.0)
