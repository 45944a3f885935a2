# -*- coding: utf-8 -*-
"""
Відстані бюджету та проєкція на допустиму множину
"""

import numpy as np
from scipy.optimize import bisect


def l0_distance(alpha, alpha_init) -> int:
    """
    Кількість координат, у яких alpha відрізняється від alpha_init

    Args:
        alpha: Вектор опору
        alpha_init: Початковий вектор опору

    Returns:
        ||alpha - alpha_init||_0
    """
    return sum(1 for a, b in zip(alpha, alpha_init) if a != b)


def l1_distance(alpha, alpha_init):
    """
    Сума модулів різниць координат

    Args:
        alpha: Вектор опору
        alpha_init: Початковий вектор опору

    Returns:
        ||alpha - alpha_init||_1 (точний дріб для точних входів)
    """
    total = 0
    for a, b in zip(alpha, alpha_init):
        total += abs(a - b)
    return total


def project_box_l1(point, center, lower, upper, radius: float, xtol: float = 1e-14) -> np.ndarray:
    """
    Евклідова проєкція на перетин коробки [lower, upper] і L1-кулі навколо center

    Коробка має містити center. Якщо обрізання до коробки вже вкладається
    в бюджет, повертається воно; інакше множник lambda двоїстої задачі
    шукається бісекцією, і координати стискаються до
    clip(sign(y) * max(|y| - lambda, 0)).

    Args:
        point: Точка для проєкції
        center: Центр L1-кулі (alpha_init)
        lower: Нижні межі коробки
        upper: Верхні межі коробки
        radius: Радіус L1-кулі (бюджет)
        xtol: Точність бісекції

    Returns:
        Допустима точка, найближча до point
    """
    center = np.asarray(center, dtype=float)
    y = np.asarray(point, dtype=float) - center
    low = np.asarray(lower, dtype=float) - center
    high = np.asarray(upper, dtype=float) - center

    clipped = np.clip(y, low, high)
    if np.abs(clipped).sum() <= radius:
        return center + clipped
    if radius <= 0:
        return center.copy()

    def shrink(lam: float) -> np.ndarray:
        return np.clip(np.sign(y) * np.maximum(np.abs(y) - lam, 0.0), low, high)

    def excess(lam: float) -> float:
        return np.abs(shrink(lam)).sum() - radius

    lam = bisect(excess, 0.0, float(np.abs(y).max()), xtol=xtol)
    # крок у бік допустимої множини
    lam += 2 * (xtol + 4 * np.finfo(float).eps * abs(lam))
    return center + shrink(lam)
