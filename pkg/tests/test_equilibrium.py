# -*- coding: utf-8 -*-
"""
Тести рівноваги: прямий розв'язок, ітерація динаміки, доповнення, тотожність PM
"""

from fractions import Fraction

import numpy as np
import pytest

from models.errors import SingularSystemError
from models.generators import random_alpha, random_instance
from models.scalar import EXACT, FLOAT
from services.equilibrium import (compute_M, iterate_dynamics, objective, objective_batch, pm_identity_check,
                                  solve_equilibrium, system_matrix, total_mass)


class TestDirectSolve:
    """Xz = As"""

    def test_pair_equilibrium(self, pair_instance):
        report = solve_equilibrium(pair_instance)
        assert list(report.z) == [Fraction(2, 3), Fraction(1, 3)]
        assert report.f_value == 1
        assert report.residual == 0
        assert report.in_unit_range()

    def test_float_backend(self, pair_instance):
        report = solve_equilibrium(pair_instance, backend=FLOAT)
        assert report.f_value == pytest.approx(1.0)
        assert report.backend == "float"

    def test_with_inverse(self, pair_instance):
        report = solve_equilibrium(pair_instance, with_inverse=True)
        assert report.M[0, 0] == Fraction(4, 3)
        assert report.M[1, 0] == Fraction(2, 3)

    def test_system_matrix(self, pair_instance):
        X = system_matrix(pair_instance)
        assert X[0, 1] == Fraction(-1, 2)
        assert X[0, 0] == 1

    def test_all_stubborn_agents(self, pair_instance):
        # alpha = 1: кожен агент тримається своєї вродженої думки
        assert objective(pair_instance, [1, 1]) == 1

    def test_singular_when_all_alpha_zero(self, pair_instance):
        with pytest.raises(SingularSystemError):
            solve_equilibrium(pair_instance, [0, 0])

    def test_gadget_anchor(self, clique2):
        # alpha = (1, 1, 0): z = (1, 0, 1/2)
        assert objective(clique2, [1, 1, 0]) == Fraction(3, 2)
        assert objective(clique2, [1, "1/2", "1/2"]) == Fraction(5, 3)

    def test_clique_mass_at_start(self, clique2):
        assert total_mass(compute_M(clique2)) == 7


class TestIteration:
    """Ітерація динаміки сходиться до прямого розв'язку"""

    def test_exact_certification(self, pair_instance):
        report = iterate_dynamics(pair_instance)
        assert report.converged
        assert report.backend == "exact"
        assert report.discrepancy <= 1e-10
        assert report.iterations > 0

    def test_float_mode(self, pair_instance):
        report = iterate_dynamics(pair_instance, backend=FLOAT)
        assert report.f_value == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("backend", [EXACT, FLOAT])
    def test_stubborn_agents_fixed_in_one_step(self, pair_instance, backend):
        report = iterate_dynamics(pair_instance, [1, 1], backend=backend)
        assert report.converged
        assert report.iterations == 1
        assert list(report.z) == [1, 0]

    def test_start_at_fixed_point_needs_no_update(self, pair_instance):
        report = iterate_dynamics(pair_instance, [1, 1], z0=[1, 0])
        assert report.converged
        assert report.iterations == 0

    def test_non_convergence_reported(self, pair_instance):
        report = iterate_dynamics(pair_instance, max_steps=2)
        assert not report.converged
        assert report.discrepancy is None

    def test_rejects_all_zero_alpha(self, pair_instance):
        with pytest.raises(SingularSystemError):
            iterate_dynamics(pair_instance, [0, 0])

    def test_random_instances(self, rng):
        for _ in range(5):
            instance = random_instance(rng, int(rng.integers(2, 10)))
            alpha = random_alpha(rng, instance)
            report = iterate_dynamics(instance, alpha)
            assert report.residual == 0
            assert report.discrepancy <= 1e-10
            assert report.in_unit_range()


class TestComplementAndIdentities:
    """Доповнення та тотожності для M"""

    def test_complement_sums_to_agents(self, rng):
        for _ in range(5):
            instance = random_instance(rng, int(rng.integers(2, 10)))
            alpha = random_alpha(rng, instance)
            total = objective(instance, alpha) + objective(instance.complement(), alpha)
            assert total == instance.n_agents

    def test_pm_identity_subtract_zero(self, rng):
        instance = random_instance(rng, 6)
        report = pm_identity_check(instance, random_alpha(rng, instance, interior=True))
        assert report.rows_checked == 6
        assert report.diagonal_holds
        assert report.off_diagonal_subtract_zero
        assert not report.off_diagonal_subtract_one

    def test_batch_matches_single(self, rng):
        instance = random_instance(rng, 5)
        alphas = np.array([random_alpha(rng, instance).astype(float) for _ in range(4)])
        batch = objective_batch(instance.interaction.entries, instance.innate, alphas)
        singles = [objective(instance, a, FLOAT) for a in alphas]
        assert batch == pytest.approx(singles, rel=1e-12)

    def test_M_alpha_is_ones(self, rng):
        instance = random_instance(rng, 5)
        alpha = random_alpha(rng, instance)
        assert all(v == 1 for v in compute_M(instance, alpha, EXACT).dot(alpha))
