# -*- coding: utf-8 -*-
"""
Тести числових бекендів, методу Гаусса та відстаней бюджету
"""

from fractions import Fraction

import numpy as np
import pytest

from models.errors import SingularSystemError
from models.scalar import EXACT, FLOAT, format_rational, get_backend, parse_scalar
from services.distance import l0_distance, l1_distance, project_box_l1
from services.linalg import inverse, max_abs, solve


class TestParseScalar:
    """Перетворення на точні дроби"""

    def test_string_forms(self):
        assert parse_scalar("3/4") == Fraction(3, 4)
        assert parse_scalar(" 0.1 ") == Fraction(1, 10)
        assert parse_scalar("-2") == Fraction(-2)

    def test_float_is_read_as_decimal(self):
        assert parse_scalar(0.1) == Fraction(1, 10)

    def test_numpy_integer(self):
        assert parse_scalar(np.int64(7)) == Fraction(7)

    def test_rejects_bool_and_garbage(self):
        with pytest.raises(TypeError):
            parse_scalar(True)
        with pytest.raises(ValueError):
            parse_scalar("one half")
        with pytest.raises(ValueError):
            parse_scalar(float("nan"))

    def test_format_rational(self):
        assert format_rational(Fraction(6, 8)) == "3/4"
        assert format_rational(2) == "2/1"
        assert format_rational(Fraction(-1, 3)) == "-1/3"


class TestBackends:
    """Вибір і поведінка бекендів"""

    def test_get_backend(self):
        assert get_backend("exact") is EXACT
        assert get_backend(FLOAT) is FLOAT
        with pytest.raises(ValueError):
            get_backend("decimal")

    def test_exact_array_is_object_of_fractions(self):
        values = EXACT.array([1, "1/3", 0.5])
        assert values.dtype == object
        assert list(values) == [Fraction(1), Fraction(1, 3), Fraction(1, 2)]

    def test_comparisons(self):
        assert EXACT.leq(Fraction(1, 3), Fraction(1, 3))
        assert not EXACT.equal(Fraction(1, 3), 1 / 3)
        assert FLOAT.equal(1 / 3, 0.3333333333, tol=1e-9)


class TestSolve:
    """Метод Гаусса"""

    def test_exact_solution_has_zero_residual(self):
        A = EXACT.array([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
        b = EXACT.array([1, 2, 3])
        x = solve(A, b, EXACT)
        assert all(r == 0 for r in A.dot(x) - b)

    def test_exact_inverse(self):
        A = EXACT.array([[1, "-1/2"], ["-1/2", 1]])
        M = inverse(A, EXACT)
        assert M[0, 0] == Fraction(4, 3)
        assert M[0, 1] == Fraction(2, 3)

    def test_float_matches_numpy(self):
        A = np.array([[4.0, 1.0], [2.0, 3.0]])
        b = np.array([1.0, 2.0])
        assert solve(A, b, FLOAT) == pytest.approx(np.linalg.solve(A, b))

    def test_pivoting_handles_zero_leading_entry(self):
        A = EXACT.array([[0, 1], [1, 0]])
        assert list(solve(A, EXACT.array([2, 3]), EXACT)) == [Fraction(3), Fraction(2)]

    def test_singular_names_column(self):
        A = EXACT.array([[1, 2], [2, 4]])
        with pytest.raises(SingularSystemError, match="стовпці 1"):
            solve(A, EXACT.array([1, 1]), EXACT)

    def test_incompatible_shapes(self):
        with pytest.raises(ValueError):
            solve(EXACT.eye(2), EXACT.array([1, 2, 3]), EXACT)

    def test_max_abs(self):
        assert max_abs(EXACT.array([["-3/2", 1], [0, "1/2"]])) == Fraction(3, 2)
        assert max_abs(np.array([])) == 0


class TestDistances:
    """Відстані L0, L1 і проєкція на коробку з L1-кулею"""

    def test_l0_and_l1(self):
        alpha = EXACT.array([1, "1/2", 0])
        start = EXACT.array([1, 0, 0])
        assert l0_distance(alpha, start) == 1
        assert l1_distance(alpha, start) == Fraction(1, 2)

    def test_projection_of_feasible_point_is_identity(self):
        center = np.array([1.0, 0.0, 0.0])
        point = np.array([1.0, 0.25, 0.5])
        projected = project_box_l1(point, center, [1.0, 0.0, 0.0], [1.0, 1.0, 1.0], 1.0)
        assert projected == pytest.approx(point)

    def test_projection_respects_budget_and_box(self):
        center = np.zeros(3)
        projected = project_box_l1(np.array([2.0, 0.9, -1.0]), center, np.zeros(3), np.ones(3), 1.0)
        assert np.all(projected >= 0) and np.all(projected <= 1)
        assert np.abs(projected - center).sum() <= 1.0 + 1e-12
        assert projected == pytest.approx([1.0, 0.0, 0.0], abs=1e-9)

    def test_zero_radius_returns_center(self):
        center = np.array([0.5, 0.5])
        projected = project_box_l1(np.array([1.0, 0.0]), center, np.zeros(2), np.ones(2), 0.0)
        assert projected == pytest.approx(center)
