# -*- coding: utf-8 -*-
"""
Винятки предметної області
"""


class InstanceError(ValueError):
    """Некоректні дані екземпляра задачі (розміри, межі, довжини векторів)"""


class ConstructionError(ValueError):
    """Неможливо побудувати матрицю взаємодії"""


class InputError(ValueError):
    """Помилка розбору вхідного файлу"""


class SingularSystemError(ArithmeticError):
    """Матриця X = I - (I-A)P вироджена"""


class BoundaryError(ValueError):
    """Похідна запитана на межі alpha_i = 1, де формула не визначена"""


class HypothesisError(ValueError):
    """Порушено припущення леми (alpha_0 != 1, delta >= d/n тощо)"""


class GuardRefusal(RuntimeError):
    """Задача завелика для повного перебору"""
