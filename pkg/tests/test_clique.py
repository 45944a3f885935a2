# -*- coding: utf-8 -*-
"""
Тести замкнених формул для кліки, оцінки збурення та пошуку delta*
"""

from fractions import Fraction

import numpy as np
import pytest

from models.errors import HypothesisError
from models.network import build_clique_matrix, build_regular_matrix, mix_matrices
from models.scalar import EXACT, FLOAT
from services.clique import (DeltaVariant, check_regular_feasible, clique_closed_form, clique_mass_maximum,
                             clique_yij, default_probes, delta_formula, empirical_delta_star, mass_bound_delta,
                             perturbation_sandwich, sandwich_factors, y_negative_at_zero)
from services.linalg import inverse

TRIANGLE = ((1, 2), (2, 3), (1, 3))
K4 = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def _system(P, alpha):
    alpha = EXACT.array(alpha)
    return EXACT.eye(len(alpha)) - (1 - alpha)[:, None] * EXACT.array(P.entries)


class TestClosedForm:
    """M для P = C через Шермана-Моррісона"""

    def test_anchor_n2(self):
        closed = clique_closed_form([1, 0, 0], 2)
        assert closed.w == Fraction(-7, 6)
        assert closed.total_mass == 7
        assert closed.M_closed[1, 1] == Fraction(4, 3)
        assert clique_yij([1, 0, 0], 2, 1, 2) == Fraction(-2, 3)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_matches_direct_inverse(self, n, rng):
        alpha = [1] + [Fraction(int(v), 64) for v in rng.integers(0, 65, size=n)]
        closed = clique_closed_form(alpha, n)
        M = inverse(_system(build_clique_matrix(n), alpha))
        assert np.all(closed.M_closed == M)
        assert M.sum() == closed.total_mass

    @pytest.mark.parametrize("n", [2, 4, 7])
    def test_y_negative_at_zero(self, n, rng):
        alpha = [1] + [Fraction(int(v), 16) for v in rng.integers(0, 17, size=n)]
        alpha[2] = Fraction(0)
        assert clique_yij(alpha, n, 1, 2) <= Fraction(-1, n + 1)

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_mass_maximum(self, n):
        assert clique_closed_form([1] + [0] * n, n).total_mass == clique_mass_maximum(n) == n * n + n + 1
        assert clique_closed_form([1] + ["1/2"] * n, n).total_mass < clique_mass_maximum(n)

    def test_erratum_mass_exceeds_n(self):
        # 1ᵀM1 <= n не виконується вже для n = 2
        assert clique_closed_form([1, 0, 0], 2).total_mass > 2

    def test_hypothesis_checks(self):
        with pytest.raises(HypothesisError):
            clique_closed_form([0, 0, 0], 2)
        with pytest.raises(HypothesisError):
            clique_closed_form([1, 0], 2)
        with pytest.raises(HypothesisError):
            clique_yij([1, 0, 0], 2, 1, 1)


class TestPerturbation:
    """Поелементна оцінка та межа маси"""

    def test_factors(self):
        lower, upper = sandwich_factors(Fraction(1, 2), 2)
        assert lower == Fraction(1, 6)
        assert upper == Fraction(9, 2)

    def test_identity_perturbation(self):
        X = _system(build_clique_matrix(3), [1, 0, "1/2", 1])
        certificate = perturbation_sandwich(X, X, 0)
        assert certificate.holds and certificate.applicable
        assert certificate.entries_total == 16

    @pytest.mark.parametrize("delta", [Fraction(1, 100), Fraction(1, 3)])
    def test_clique_vs_mixture(self, delta):
        alpha = [1, 0, 1, 0]
        clique = build_clique_matrix(3)
        mixed = mix_matrices(clique, build_regular_matrix(TRIANGLE, 3, 2), delta)
        certificate = perturbation_sandwich(_system(clique, alpha), _system(mixed, alpha), delta * 3 / 2)
        assert certificate.applicable, certificate.hypothesis_notes
        assert certificate.holds

    def test_hypothesis_violation_is_recorded(self):
        X0 = _system(build_clique_matrix(2), [1, 0, 0])
        X1 = EXACT.eye(3)
        certificate = perturbation_sandwich(X0, X1, Fraction(1, 10))
        assert not certificate.applicable
        assert certificate.hypothesis_notes

    def test_epsilon_range(self):
        X = EXACT.eye(2)
        with pytest.raises(HypothesisError):
            perturbation_sandwich(X, X, 1)

    def test_mass_bound(self):
        bound = mass_bound_delta(4, K4, 3, [1, 0, 1, 0, 0], Fraction(1, 10))
        assert bound.epsilon == Fraction(2, 15)
        assert bound.holds
        assert bound.base_mass <= bound.bound

    def test_mass_bound_requires_small_delta(self):
        with pytest.raises(HypothesisError):
            mass_bound_delta(3, TRIANGLE, 2, [1, 0, 0, 0], Fraction(2, 3))


class TestDeltaFormula:
    """Формули delta та емпіричний delta*"""

    def test_triangle_values(self):
        assert delta_formula(3, 2, DeltaVariant.PAPER) == Fraction(729, 10 ** 9)
        assert delta_formula(3, 2, DeltaVariant.CORRECTED) == Fraction(729, 64 * 10 ** 9)
        assert delta_formula(3, 2, "paper") == Fraction(729, 10 ** 9)

    @pytest.mark.parametrize("variant", [DeltaVariant.PAPER, DeltaVariant.CORRECTED])
    @pytest.mark.parametrize("n, d", [(n, 2) for n in range(3, 11)] + [(n, 3) for n in (4, 6, 8, 10)])
    def test_delta_and_perturbation_are_small(self, n, d, variant):
        delta = delta_formula(n, d, variant)
        assert 0 < delta < Fraction(1, 2 * n)
        assert delta * n / d < Fraction(1, 2 * d)

    def test_corrected_is_smaller(self):
        for n in range(3, 11):
            assert delta_formula(n, 2, DeltaVariant.CORRECTED) < delta_formula(n, 2, DeltaVariant.PAPER)

    def test_infeasible_graph(self):
        with pytest.raises(HypothesisError):
            check_regular_feasible(3, 3)
        with pytest.raises(HypothesisError):
            delta_formula(5, 3)

    def test_probes(self):
        probes = default_probes(3, samples=4, seed=1)
        assert len(probes) == 5
        assert list(probes[0]) == [1, 0, 0, 0]
        assert all(p[0] == 1 for p in probes)

    def test_corrected_delta_keeps_y_negative(self):
        delta = delta_formula(3, 2)
        P = mix_matrices(build_clique_matrix(3), build_regular_matrix(TRIANGLE, 3, 2), delta)
        assert y_negative_at_zero(EXACT.array(P.entries), default_probes(3, 8), 3, EXACT)

    def test_search_on_triangle(self):
        result = empirical_delta_star(3, TRIANGLE, 2, samples=4)
        assert result.certified
        assert result.delta_star >= result.paper >= result.corrected
        assert result.ratio_to_corrected >= 1
        assert result.probes == 5

    def test_single_probe_search(self):
        probes = default_probes(3, samples=0)
        result = empirical_delta_star(3, TRIANGLE, 2, probes=probes)
        assert result.probes == 1
        assert result.delta_star >= Fraction(729, 10 ** 9)
        assert y_negative_at_zero(FLOAT.array(build_clique_matrix(3).entries), probes, 3, FLOAT)
