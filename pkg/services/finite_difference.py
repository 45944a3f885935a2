# -*- coding: utf-8 -*-
"""
Скінченно-різницеві оракули для похідних f та y_ij
"""

import logging
from typing import Callable

import numpy as np

from config import SETTINGS
from models.instance import OpinionInstance
from models.scalar import FLOAT
from services.equilibrium import alpha_array, column_sums, objective
from services.linalg import inverse

logger = logging.getLogger(__name__)


def relative_error(value: float, reference: float) -> float:
    """|value - reference| / max(1, |reference|)"""
    return abs(float(value) - float(reference)) / max(1.0, abs(float(reference)))


def partial_difference(func: Callable[[np.ndarray], float], x: np.ndarray, index: int,
                       h: float = SETTINGS.fd_step, lower: float = 0.0, upper: float = 1.0) -> float:
    """
    Перша похідна func за координатою index

    Центральна різниця, а біля меж [lower, upper] одностороння
    (точність падає до O(h)).

    Args:
        func: Функція вектора
        x: Точка
        index: Координата
        h: Крок
        lower: Нижня межа координати
        upper: Верхня межа координати

    Returns:
        Наближення похідної
    """
    x = np.array(x, dtype=float)
    plus, minus = x.copy(), x.copy()
    plus[index] += h
    minus[index] -= h
    if plus[index] > upper:
        return (func(x) - func(minus)) / h
    if minus[index] < lower:
        return (func(plus) - func(x)) / h
    return (func(plus) - func(minus)) / (2 * h)


def _centered(x: np.ndarray, indices, h: float) -> np.ndarray:
    """Зсуває центр шаблону так, щоб усі точки лежали в [0, 1]"""
    center = np.array(x, dtype=float)
    for index in indices:
        center[index] = min(max(center[index], h), 1.0 - h)
    return center


def _f(instance: OpinionInstance) -> Callable[[np.ndarray], float]:
    return lambda point: float(objective(instance, point, FLOAT))


def finite_difference_gradient(instance: OpinionInstance, alpha=None,
                               h: float = SETTINGS.fd_step) -> np.ndarray:
    """
    Градієнт f центральними різницями

    Args:
        instance: Екземпляр задачі
        alpha: Точка
        h: Крок

    Returns:
        Вектор наближених df/dalpha_i
    """
    x = alpha_array(instance, alpha, FLOAT)
    f = _f(instance)
    return np.array([partial_difference(f, x, i, h) for i in range(instance.n_agents)])


def second_difference(instance: OpinionInstance, alpha, i: int, h: float = SETTINGS.fd_step_second) -> float:
    """(f(x + h e_i) - 2 f(x) + f(x - h e_i)) / h^2"""
    x = _centered(alpha_array(instance, alpha, FLOAT), (i,), h)
    f = _f(instance)
    step = np.zeros_like(x)
    step[i] = h
    return (f(x + step) - 2 * f(x) + f(x - step)) / h ** 2


def mixed_difference(instance: OpinionInstance, alpha, i: int, j: int,
                     h: float = SETTINGS.fd_step_second) -> float:
    """(f(++) - f(+-) - f(-+) + f(--)) / (4 h^2) за координатами i, j"""
    x = _centered(alpha_array(instance, alpha, FLOAT), (i, j), h)
    f = _f(instance)
    e_i = np.zeros_like(x)
    e_j = np.zeros_like(x)
    e_i[i] = h
    e_j[j] = h
    return (f(x + e_i + e_j) - f(x + e_i - e_j) - f(x - e_i + e_j) + f(x - e_i - e_j)) / (4 * h ** 2)


def directional_second_difference(instance: OpinionInstance, alpha, i: int, j: int,
                                  h: float = SETTINGS.fd_step_second) -> float:
    """Друга різниця f уздовж напрямку e_i - e_j"""
    x = _centered(alpha_array(instance, alpha, FLOAT), (i, j), h)
    f = _f(instance)
    direction = np.zeros_like(x)
    direction[i] = h
    direction[j] = -h
    return (f(x + direction) - 2 * f(x) + f(x - direction)) / h ** 2


def y_entry_difference(instance: OpinionInstance, alpha, i: int, j: int, k: int, l: int,
                       h: float = SETTINGS.fd_step) -> float:
    """
    dy_ij/dP_kl центральною різницею без перенормування рядка k

    Args:
        instance: Екземпляр задачі
        alpha: Точка
        i: Агент i
        j: Агент j
        k: Рядок збуреного елемента
        l: Стовпець збуреного елемента
        h: Крок

    Returns:
        Наближення похідної
    """
    a = alpha_array(instance, alpha, FLOAT)
    base = FLOAT.array(instance.interaction.entries)

    def y_at(P: np.ndarray) -> float:
        M = inverse(np.eye(len(a)) - (1 - a)[:, None] * P, FLOAT)
        c = column_sums(M)
        return c[i] * (M[j, j] - 1) - c[j] * M[j, i]

    plus, minus = base.copy(), base.copy()
    plus[k, l] += h
    minus[k, l] -= h
    return (y_at(plus) - y_at(minus)) / (2 * h)
