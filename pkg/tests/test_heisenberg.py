"""Closed-form operator evolution against the elementwise phase oracle."""

import math

import numpy as np
import pytest

import sincoord as sc

PT23 = sc.PoschlTeller(2.0, 3.0)
DO1 = sc.DeformedOscillator(1.0)
AW1 = sc.AskeyWilson(0.1, 0.2, -0.1, 0.3, q=0.5)

T_GRID = (0.0, 0.1, 0.37, 1.0, 2.5, 5.0)


class TestExactEvolution:
    @pytest.mark.parametrize("spec", [PT23, DO1, AW1])
    def test_reduces_to_coordinate_at_time_zero(self, spec):
        _, eta, _ = sc.build_basic(spec, 16, 4)
        evolved = sc.exact_evolution(spec, 16, 4, 0.0)
        d = evolved.interior
        assert np.max(np.abs(evolved.entries[:d, :d] - eta.entries[:d, :d])) < 1e-12

    def test_do_cos_sin_form(self):
        _, eta, comm = sc.build_basic(DO1, 20, 4)
        for t in (0.7, 2.3):
            evolved = sc.exact_evolution(DO1, 20, 4, t)
            expected = eta.entries * math.cos(t) + 1j * comm.entries * math.sin(t)
            d = evolved.interior
            assert (
                np.max(np.abs(evolved.entries[:d, :d] - expected[:d, :d])) < 1e-13
            )

    def test_rejects_nonfinite_time(self):
        with pytest.raises(ValueError):
            sc.exact_evolution(DO1, 10, 4, math.inf)


class TestOracleEvolution:
    def test_time_zero_is_coordinate(self):
        _, eta, _ = sc.build_basic(DO1, 12, 4)
        oracle = sc.oracle_evolution(DO1, 12, 4, 0.0)
        assert np.array_equal(oracle.entries, eta.entries)

    def test_diagonal_is_phase_free(self):
        for t in (0.3, 4.4):
            oracle = sc.oracle_evolution(AW1, 12, 4, t)
            ref = sc.oracle_evolution(AW1, 12, 4, 0.0)
            assert np.allclose(
                np.diag(oracle.entries), np.diag(ref.entries), atol=1e-15
            )

    def test_do_entry_at_pi(self):
        oracle = sc.oracle_evolution(DO1, 10, 4, math.pi)
        assert oracle.entries[2, 1] == pytest.approx(-1.0, abs=1e-12)

    def test_group_property(self):
        rng = np.random.default_rng(7)
        levels = sc.energies(PT23, 12)
        _, eta, _ = sc.build_basic(PT23, 12, 4)
        for t1, t2 in rng.uniform(0.05, 3.0, size=(5, 2)):
            left = sc.oracle_evolution(PT23, 12, 4, t1).entries * np.exp(
                1j * (levels[:, None] - levels[None, :]) * t2
            )
            right = sc.oracle_evolution(PT23, 12, 4, t1 + t2).entries
            assert np.max(np.abs(left - right)) < 1e-12 * max(
                1.0, float(np.max(np.abs(eta.entries)))
            )


class TestCheckHeisenberg:
    def test_do(self):
        report = sc.check_heisenberg(DO1, 30, 4, (0.1, 1.0, 5.0))
        assert report.passed and report.max_residual <= 1e-12

    def test_pt(self):
        report = sc.check_heisenberg(PT23, 30, 4, (0.1, 1.0, 5.0))
        assert report.passed and report.max_residual <= 1e-10

    def test_aw(self):
        report = sc.check_heisenberg(AW1, 20, 4, (0.1, 0.5))
        assert report.passed and report.max_residual <= 1e-9

    def test_full_grid_all_systems(self):
        for spec, n_dim in ((DO1, 30), (PT23, 30), (AW1, 20)):
            assert sc.check_heisenberg(spec, n_dim, 4, T_GRID).passed


class TestSolutionDecomposition:
    @pytest.mark.parametrize("spec", [PT23, DO1, AW1])
    def test_parts_sum_to_coordinate_at_time_zero(self, spec):
        solution = sc.build_solution(spec, 16, 4)
        _, eta, _ = sc.build_basic(spec, 16, 4)
        d = 16 - 4
        value = solution.evolve(0.0)
        assert np.max(np.abs(value[:d, :d] - eta.entries[:d, :d])) < 1e-12

    def test_constant_part_is_real_and_matches_diagonal(self):
        solution = sc.build_solution(AW1, 16, 4)
        assert np.all(np.isreal(solution.constant_part))
        rec = sc.recurrence(AW1)
        diag = [rec.B(n) for n in range(12)]
        assert np.allclose(solution.constant_part[:12], diag, atol=1e-13)

    def test_do_periodicity(self):
        for t in (0.4, 1.9):
            a = sc.exact_evolution(DO1, 20, 4, t)
            b = sc.exact_evolution(DO1, 20, 4, t + 2.0 * math.pi)
            d = a.interior
            assert np.max(np.abs(a.entries[:d, :d] - b.entries[:d, :d])) < 1e-12

    @pytest.mark.parametrize("spec", [PT23, DO1, AW1])
    def test_diagonal_is_time_independent(self, spec):
        rec = sc.recurrence(spec)
        expected = np.array([rec.B(n) for n in range(12)])
        for t in (0.37, 2.5):
            evolved = sc.exact_evolution(spec, 16, 4, t)
            diag = np.diag(evolved.entries)[:12]
            assert np.max(np.abs(diag - expected)) < 1e-12
