# -*- coding: utf-8 -*-
"""
Метод Гаусса з вибором опорного елемента для обох бекендів
"""

import logging

import numpy as np

from models.errors import SingularSystemError
from models.scalar import Backend, EXACT

logger = logging.getLogger(__name__)


def solve(matrix, rhs, backend: Backend = EXACT) -> np.ndarray:
    """
    Розв'язує систему matrix @ x = rhs

    Частковий вибір опорного елемента: рядок з найбільшим модулем у стовпці,
    при рівності перший за індексом. У точному режимі найбільший модуль
    завжди ненульовий, якщо ненульовий елемент взагалі існує.

    Args:
        matrix: Квадратна матриця n x n
        rhs: Вектор довжини n або матриця n x m
        backend: Арифметика обчислень

    Returns:
        Розв'язок тієї ж форми, що й rhs

    Raises:
        SingularSystemError: Якщо у якомусь стовпці немає ненульового опорного елемента
    """
    a = backend.array(matrix)
    b = backend.array(rhs)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)

    n = a.shape[0]
    if a.shape != (n, n) or b.shape[0] != n:
        raise ValueError(f"Несумісні розміри системи: {a.shape} та {b.shape}")

    scale = max((abs(x) for x in a.flat), default=0)

    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r, col]))
        if backend.negligible(a[pivot, col], scale, n):
            raise SingularSystemError(
                f"Вироджена система: немає ненульового опорного елемента у стовпці {col}"
            )
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]

        head = a[col, col]
        for row in range(col + 1, n):
            factor = a[row, col] / head
            if factor == 0:
                continue
            a[row, col:] -= factor * a[col, col:]
            b[row] -= factor * b[col]

    x = backend.zeros(b.shape)
    for row in range(n - 1, -1, -1):
        acc = b[row].copy()
        for k in range(row + 1, n):
            if a[row, k] != 0:
                acc -= a[row, k] * x[k]
        x[row] = acc / a[row, row]

    return x.reshape(-1) if vector else x


def inverse(matrix, backend: Backend = EXACT) -> np.ndarray:
    """
    Обернена матриця через solve(matrix, I)

    Args:
        matrix: Квадратна невироджена матриця
        backend: Арифметика обчислень

    Returns:
        matrix^{-1}
    """
    n = np.asarray(matrix).shape[0]
    return solve(matrix, backend.eye(n), backend)


def max_abs(values) -> object:
    """Max-норма (0 для порожнього масиву)"""
    return max((abs(v) for v in np.asarray(values).flat), default=0)
