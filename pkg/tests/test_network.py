# -*- coding: utf-8 -*-
"""
Тести екземпляра задачі, будівників матриць та валідації
"""

from fractions import Fraction

import numpy as np
import pytest

from models.errors import ConstructionError, InstanceError
from models.generators import random_alpha, random_instance, random_vertex
from models.instance import BudgetSpec, InteractionMatrix, Norm, OpinionInstance, ResistanceVector
from models.network import build_clique_matrix, build_regular_matrix, mix_matrices, regular_graph
from services.validation import Violation, validate_instance

TRIANGLE = ((1, 2), (2, 3), (1, 3))


class TestInteractionMatrix:
    """Матриця впливу"""

    def test_fraction_entries_stay_exact(self):
        matrix = InteractionMatrix(np.array([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]], dtype=object))
        assert matrix.is_exact
        assert matrix.is_irreducible()

    def test_float_entries(self):
        matrix = InteractionMatrix(np.array([[0.5, 0.5], [1.0, 0.0]]))
        assert not matrix.is_exact
        assert matrix.row_sums() == pytest.approx([1.0, 1.0])

    def test_non_square_rejected(self):
        with pytest.raises(InstanceError):
            InteractionMatrix(np.zeros((2, 3)))

    def test_reducible_support(self):
        matrix = InteractionMatrix(np.array([[1.0, 0.0], [0.5, 0.5]]))
        assert not matrix.is_irreducible()


class TestOpinionInstance:
    """Екземпляр і його доповнення"""

    def test_wrong_lengths(self, pair_instance):
        with pytest.raises(InstanceError):
            OpinionInstance(innate=np.array([Fraction(1)], dtype=object), bounds=pair_instance.bounds,
                            alpha_init=pair_instance.alpha_init, interaction=pair_instance.interaction)

    def test_modifiable_agents(self, clique2):
        assert clique2.modifiable_agents == (1, 2)
        assert list(clique2.lower) == [1, 0, 0]

    def test_complement_flips_innate(self, pair_instance):
        flipped = pair_instance.complement()
        assert list(flipped.innate) == [Fraction(0), Fraction(1)]
        assert flipped.interaction is pair_instance.interaction


class TestBudget:
    """Облік бюджету"""

    def test_resistance_vector_accounting(self):
        vector = ResistanceVector.from_alpha(np.array([Fraction(1), Fraction(1, 4), Fraction(1)], dtype=object),
                                             np.array([Fraction(1), Fraction(0), Fraction(0)], dtype=object))
        assert vector.l0_used == 2
        assert vector.l1_used == Fraction(5, 4)
        assert vector.recompute_matches()

    def test_admits(self):
        vector = ResistanceVector.from_alpha(np.array([Fraction(1, 2), Fraction(1, 2)], dtype=object),
                                             np.array([Fraction(0), Fraction(0)], dtype=object))
        assert BudgetSpec(Norm.L1, Fraction(1)).admits(vector)
        assert not BudgetSpec(Norm.L1, Fraction(99, 100)).admits(vector)
        assert BudgetSpec(Norm.L0, Fraction(2)).admits(vector)
        assert not BudgetSpec(Norm.L0, Fraction(1)).admits(vector)

    def test_invalid_budgets(self):
        with pytest.raises(InstanceError):
            BudgetSpec(Norm.L0, Fraction(1, 2))
        with pytest.raises(InstanceError):
            BudgetSpec(Norm.L1, Fraction(-1))


class TestBuilders:
    """Кліка, регулярний граф і суміш"""

    def test_clique_matrix(self):
        C = build_clique_matrix(2).entries
        assert C[0, 0] == 0
        assert C[0, 1] == Fraction(1, 2)
        assert all(total == 1 for total in C.sum(axis=1))

    def test_clique_requires_two_vertices(self):
        with pytest.raises(ConstructionError):
            build_clique_matrix(1)

    def test_regular_matrix(self):
        R = build_regular_matrix(TRIANGLE, 3, 2).entries
        assert R[0, 0] == 1
        assert R[1, 2] == R[2, 1] == Fraction(1, 2)
        assert R[1, 1] == 0

    def test_non_regular_graph_names_vertex(self):
        with pytest.raises(ConstructionError, match="вершина 1"):
            regular_graph([(1, 2), (2, 3)], 3, 2)

    def test_self_loop_and_duplicate(self):
        with pytest.raises(ConstructionError, match="петля"):
            regular_graph([(1, 1)], 2, 1)
        with pytest.raises(ConstructionError, match="повторне ребро"):
            regular_graph([(1, 2), (2, 1)], 2, 1)

    def test_mix_is_exact_and_stochastic(self):
        delta = Fraction(1, 10)
        P = mix_matrices(build_clique_matrix(3), build_regular_matrix(TRIANGLE, 3, 2), delta)
        assert P.is_exact
        assert P.entries[0, 0] == delta
        assert P.entries[1, 2] == Fraction(9, 10) * Fraction(1, 3) + delta * Fraction(1, 2)
        assert all(total == 1 for total in P.row_sums())

    def test_mix_rejects_delta_out_of_range(self):
        with pytest.raises(ConstructionError):
            mix_matrices(build_clique_matrix(3), build_regular_matrix(TRIANGLE, 3, 2), Fraction(3, 2))


class TestGeneratorsAndValidation:
    """Випадкові екземпляри проходять валідацію"""

    def test_random_instances_are_valid(self, rng):
        for n in (2, 5, 9):
            instance = random_instance(rng, n)
            assert validate_instance(instance) == []
            alpha = random_alpha(rng, instance)
            assert ResistanceVector.from_alpha(alpha, instance.alpha_init).within_bounds(instance)

    def test_interior_alpha(self, rng):
        instance = random_instance(rng, 6)
        alpha = random_alpha(rng, instance, interior=True)
        assert all(a < 1 for a in alpha)

    def test_random_vertex_pins_agent(self, rng, clique2):
        assert random_vertex(rng, clique2)[0] == 1

    def test_validation_reports_every_issue(self):
        instance = OpinionInstance(
            innate=np.array([Fraction(2), Fraction(0)], dtype=object),
            bounds=np.array([[Fraction(0), Fraction(1)], [Fraction(0), Fraction(1)]], dtype=object),
            alpha_init=np.array([Fraction(0), Fraction(0)], dtype=object),
            interaction=InteractionMatrix(np.array([[Fraction(1), Fraction(0)], [Fraction(1, 2), Fraction(1, 3)]],
                                                   dtype=object)),
        )
        violations = {issue.violation for issue in validate_instance(instance)}
        assert violations == {Violation.ROW_NOT_STOCHASTIC, Violation.INNATE_RANGE,
                              Violation.NO_POSITIVE_LOWER_BOUND, Violation.REDUCIBLE}
