# -*- coding: utf-8 -*-
"""
Генератори випадкових раціональних екземплярів для тестів і наборів перевірок
"""

from fractions import Fraction
from typing import Optional

import numpy as np

from models.instance import InteractionMatrix, OpinionInstance
from models.scalar import EXACT


def _grid_fraction(rng: np.random.Generator, denominator: int, low: int, high: int) -> Fraction:
    """Випадковий дріб m/denominator з m у [low, high]"""
    return Fraction(int(rng.integers(low, high + 1)), denominator)


def random_interaction(rng: np.random.Generator, n_agents: int, denominator: int = 16,
                       extra_edges: Optional[int] = None) -> InteractionMatrix:
    """
    Випадкова незвідна рядково-стохастична матриця з раціональними елементами

    Підтримка містить гамільтонів цикл за випадковою перестановкою плюс
    випадкові додаткові дуги; ваги кожного рядка нормуються точно.

    Args:
        rng: Генератор випадкових чисел
        n_agents: Кількість агентів
        denominator: Знаменник сітки для сирих ваг
        extra_edges: Кількість додаткових дуг (за замовчуванням ~ n_agents)

    Returns:
        Точна InteractionMatrix
    """
    order = rng.permutation(n_agents)
    support = np.zeros((n_agents, n_agents), dtype=bool)
    for position in range(n_agents):
        support[order[position], order[(position + 1) % n_agents]] = True

    if extra_edges is None:
        extra_edges = n_agents
    for _ in range(extra_edges):
        i, j = rng.integers(0, n_agents, size=2)
        if i != j:
            support[i, j] = True

    entries = EXACT.zeros((n_agents, n_agents))
    for i in range(n_agents):
        weights = {int(j): _grid_fraction(rng, denominator, 1, denominator) for j in np.flatnonzero(support[i])}
        total = sum(weights.values())
        for j, weight in weights.items():
            entries[i, j] = weight / total
    return InteractionMatrix(entries)


def random_instance(rng: np.random.Generator, n_agents: int, denominator: int = 16,
                    label: str = "random") -> OpinionInstance:
    """
    Випадковий коректний екземпляр задачі

    Агент 0 має l_0 >= 1/2, тож передумова збіжності виконується
    для будь-якого alpha з коробки.

    Args:
        rng: Генератор випадкових чисел
        n_agents: Кількість агентів (>= 2)
        denominator: Знаменник сітки значень
        label: Мітка екземпляра

    Returns:
        OpinionInstance з точними дробами
    """
    if n_agents < 2:
        raise ValueError(f"Потрібно щонайменше 2 агенти, отримано {n_agents}")
    half = denominator // 2
    innate, bounds, alpha_init = [], [], []
    for i in range(n_agents):
        if i == 0:
            low = _grid_fraction(rng, denominator, half, denominator - 1)
        else:
            low = _grid_fraction(rng, denominator, 0, half)
        high = _grid_fraction(rng, denominator, int(low * denominator), denominator)
        start = _grid_fraction(rng, denominator, int(low * denominator), int(high * denominator))
        innate.append(_grid_fraction(rng, denominator, 0, denominator))
        bounds.append([low, high])
        alpha_init.append(start)

    return OpinionInstance(
        innate=np.array(innate, dtype=object),
        bounds=np.array(bounds, dtype=object),
        alpha_init=np.array(alpha_init, dtype=object),
        interaction=random_interaction(rng, n_agents, denominator),
        label=label,
    )


def random_alpha(rng: np.random.Generator, instance: OpinionInstance, denominator: int = 64,
                 interior: bool = False) -> np.ndarray:
    """
    Випадковий вектор опору з коробки екземпляра

    Args:
        rng: Генератор випадкових чисел
        instance: Екземпляр задачі
        denominator: Знаменник сітки
        interior: Якщо True, значення беруться з [1/10, 9/10] ∩ [l_i, u_i]
            (похідні визначені в околі точки)

    Returns:
        Точний вектор alpha
    """
    alpha = EXACT.zeros(instance.n_agents)
    for i in range(instance.n_agents):
        low, high = instance.lower[i], instance.upper[i]
        if interior:
            low, high = max(low, Fraction(1, 10)), min(high, Fraction(9, 10))
            if low > high:
                low = high = instance.lower[i]
        fraction = _grid_fraction(rng, denominator, 0, denominator)
        alpha[i] = low + (high - low) * fraction
    return alpha


def random_vertex(rng: np.random.Generator, instance: OpinionInstance, pinned: int = 0) -> np.ndarray:
    """
    Випадкова вершина коробки з alpha_pinned = 1

    Args:
        rng: Генератор випадкових чисел
        instance: Екземпляр задачі
        pinned: Агент, якому завжди ставиться 1

    Returns:
        Точний вектор з координатами l_i або u_i
    """
    alpha = EXACT.zeros(instance.n_agents)
    for i in range(instance.n_agents):
        alpha[i] = instance.upper[i] if rng.integers(0, 2) else instance.lower[i]
    alpha[pinned] = Fraction(1)
    return alpha
