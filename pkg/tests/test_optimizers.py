# -*- coding: utf-8 -*-
"""
Тести розв'язувачів: локальний пошук, перебір L0 і L1, сітка, спуск, крива зосередження
"""

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from models.errors import GuardRefusal
from models.generators import random_instance
from models.instance import Norm
from models.scalar import FLOAT
from optimizers.coordinate import CoordinateOptimizer, local_search_unbudgeted
from optimizers.descent import ProjectedDescentOptimizer, solve_L1_projected_descent
from optimizers.enumeration import L0Optimizer, endpoint_options, solve_L0, solve_L1_concentrated
from optimizers.focus import focus_vs_spread
from optimizers.grid import GridOptimizer, concentration_gaps, is_concentrated, solve_L1_grid
from reduction.gadgets import clique_instance
from services.calculus import directional_second_derivative
from services.equilibrium import objective


class TestLocalSearch:
    """Безбюджетний локальний пошук"""

    def test_clique_goes_all_stubborn(self, clique2):
        result = local_search_unbudgeted(clique2)
        assert result.f_star == 1
        assert list(result.alpha_star.alpha) == [1, 1, 1]
        assert result.certificate["moves"] == [1, 2]

    def test_triangle_gadget_matches_endpoint_enumeration(self, triangle_l0):
        result = local_search_unbudgeted(triangle_l0.instance)
        best = min(objective(triangle_l0.instance, [1, a, b, c])
                   for a in (0, 1) for b in (0, 1) for c in (0, 1))
        assert result.f_star == best == 1

    def test_no_single_flip_improves(self, rng):
        instance = random_instance(rng, 6)
        result = CoordinateOptimizer(instance).optimize()
        for i in instance.modifiable_agents:
            flipped = np.array(result.alpha_star.alpha, dtype=object)
            flipped[i] = instance.upper[i] if flipped[i] == instance.lower[i] else instance.lower[i]
            assert objective(instance, flipped) >= result.f_star

    def test_print_results(self, clique2, capsys):
        optimizer = CoordinateOptimizer(clique2)
        optimizer.optimize()
        optimizer.print_results()
        out = capsys.readouterr().out
        assert "РЕЗУЛЬТАТИ ОПТИМІЗАЦІЇ (local-search)" in out


class TestL0:
    """Точний перебір для L0-бюджету"""

    def test_triangle_thresholds(self, triangle_l0):
        instance = triangle_l0.instance
        assert solve_L0(instance, 2).f_star == Fraction(4, 3)
        assert solve_L0(instance, 1).f_star == 2
        assert solve_L0(instance, 3).f_star == 1

    def test_zero_budget_keeps_start(self, triangle_l0):
        result = solve_L0(triangle_l0.instance, 0)
        assert result.f_star == objective(triangle_l0.instance) == 4
        assert result.certificate["subset"] == []

    def test_certificate_and_budget(self, triangle_l0):
        result = solve_L0(triangle_l0.instance, 2)
        assert len(result.certificate["subset"]) == 2
        assert result.l0_used <= 2
        assert result.budget.norm is Norm.L0

    def test_float_backend(self, clique2):
        assert float(solve_L0(clique2, 1, FLOAT).f_star) == pytest.approx(1.5)

    def test_guard_refusal(self, triangle_l0):
        with pytest.raises(GuardRefusal):
            L0Optimizer(triangle_l0.instance, 1, limit=2)

    def test_endpoint_options(self, clique2):
        assert endpoint_options(clique2, 1) == [Fraction(1)]
        assert endpoint_options(clique2, 0) == []


class TestL1:
    """Концентровані розподіли, сітковий оракул і спуск"""

    def test_clique_focus_corner(self, clique2):
        result = solve_L1_concentrated(clique2, 1)
        assert result.f_star == Fraction(3, 2)
        assert result.l1_used == 1
        assert not result.certificate["heuristic"]

    def test_fractional_budget_is_heuristic(self, clique2):
        result = solve_L1_concentrated(clique2, "3/2")
        assert result.certificate["heuristic"]
        assert result.l1_used <= Fraction(3, 2)
        assert result.f_star <= Fraction(3, 2)

    def test_triangle_yes_value(self, triangle_l1):
        result = solve_L1_concentrated(triangle_l1.instance, 2)
        assert result.f_star == triangle_l1.theta == 1 + (1 - triangle_l1.delta) / 3

    def test_grid_agrees_with_concentrated(self, clique2):
        grid = solve_L1_grid(clique2, 1, resolution=Fraction(1, 16))
        assert grid.oracle
        assert grid.f_star == pytest.approx(1.5, abs=1e-9)
        assert is_concentrated(grid, clique2)
        assert max(concentration_gaps(grid, clique2)) <= 1 / 16

    def test_grid_guard(self, triangle_l1):
        with pytest.raises(GuardRefusal):
            GridOptimizer(triangle_l1.instance, 2, agent_limit=2)
        with pytest.raises(GuardRefusal):
            GridOptimizer(triangle_l1.instance, 2, resolution=Fraction(1, 64), max_points=100).optimize()

    def test_descent_trace_nonincreasing(self, triangle_l1):
        instance = triangle_l1.instance
        result = solve_L1_projected_descent(instance, 2)
        trace = result.trace
        assert all(later <= earlier for earlier, later in zip(trace, trace[1:]))
        assert result.l1_used <= 2 + 1e-9
        assert result.f_star <= float(objective(instance))
        assert result.f_star >= float(solve_L1_concentrated(instance, 2).f_star) - 1e-9

    def test_descent_stalls_at_corner(self, clique2):
        optimizer = ProjectedDescentOptimizer(clique2, 1, start=np.array([1.0, 1.0, 0.0]))
        result = optimizer.optimize()
        assert result.certificate["accepted_steps"] == 0
        assert result.certificate["stalled"]
        assert result.f_star == pytest.approx(1.5)


class TestFocus:
    """Зосередження бюджету проти розподілу"""

    def test_clique_curve(self, clique2):
        curve = focus_vs_spread(clique2, 1, 2, 1)
        values = dict(curve.points)
        assert values[Fraction(1)] == Fraction(3, 2)
        assert values[Fraction(1, 2)] == Fraction(5, 3)
        assert curve.f_min == Fraction(3, 2)
        assert curve.is_focus
        assert curve.t_range == (0, 1)

    def test_symmetric_curve(self, clique2):
        curve = focus_vs_spread(clique2, 1, 2, Fraction(1, 2), samples=5)
        values = [value for _, value in curve.points]
        assert values == values[::-1]

    def test_interior_tie_is_not_a_minimum(self, rng):
        for _ in range(4):
            n = int(rng.integers(2, 6))
            base = clique_instance(n)
            alpha_init = base.alpha_init.copy()
            for k in range(3, n + 1):
                alpha_init[k] = Fraction(int(rng.integers(0, 8)), 8)
            instance = replace(base, alpha_init=alpha_init)
            b = Fraction(int(rng.integers(1, 9)), 8)

            tie_point = alpha_init.copy()
            tie_point[1] = tie_point[2] = b / 2
            report = directional_second_derivative(instance, tie_point, 1, 2)
            assert report.tie
            assert report.full < 0
            assert report.agrees

            curve = focus_vs_spread(instance, 1, 2, b, samples=9)
            middle = dict(curve.points)[b / 2]
            assert middle == objective(instance, tie_point)
            assert curve.is_focus
            assert curve.f_min < middle

    def test_invalid_arguments(self, clique2):
        with pytest.raises(ValueError):
            focus_vs_spread(clique2, 1, 2, 2)
        with pytest.raises(ValueError):
            focus_vs_spread(clique2, 1, 1, 1)
        with pytest.raises(ValueError):
            focus_vs_spread(clique2, 1, 2, 1, samples=1)
