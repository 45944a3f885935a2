# -*- coding: utf-8 -*-
"""
Побудова спеціальних матриць взаємодії: кліка C, регулярний граф R, суміш P^(delta)
"""

from fractions import Fraction
from typing import Iterable, Tuple

import networkx as nx
import numpy as np

from models.errors import ConstructionError
from models.instance import InteractionMatrix
from models.scalar import EXACT, parse_scalar


def regular_graph(edges: Iterable[Tuple[int, int]], n: int, d: int) -> nx.Graph:
    """
    Перевіряє список ребер і повертає простий d-регулярний граф на {1..n}

    Args:
        edges: Пари вершин (u, v)
        n: Кількість вершин
        d: Очікуваний степінь

    Returns:
        Граф networkx з вершинами 1..n

    Raises:
        ConstructionError: Петля, повторне ребро, вершина поза {1..n} або неправильний степінь
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(1, n + 1))
    for u, v in edges:
        u, v = int(u), int(v)
        for vertex in (u, v):
            if not 1 <= vertex <= n:
                raise ConstructionError(f"вершина {vertex} поза діапазоном 1..{n}")
        if u == v:
            raise ConstructionError(f"петля у вершині {u}")
        if graph.has_edge(u, v):
            raise ConstructionError(f"повторне ребро {{{min(u, v)}, {max(u, v)}}}")
        graph.add_edge(u, v)

    for vertex in range(1, n + 1):
        degree = graph.degree[vertex]
        if degree != d:
            raise ConstructionError(f"вершина {vertex} має степінь {degree} ≠ {d}")
    return graph


def build_clique_matrix(n: int) -> InteractionMatrix:
    """
    Матриця кліки C розміру (n+1) x (n+1): 1/n поза діагоналлю, 0 на діагоналі

    Args:
        n: Кількість вершин графа (агентів без агента 0)

    Returns:
        Точна рядково-стохастична матриця
    """
    if n < 2:
        raise ConstructionError(f"Матриця кліки потребує n >= 2, отримано n={n}")
    size = n + 1
    entries = EXACT.zeros((size, size))
    weight = Fraction(1, n)
    for i in range(size):
        for j in range(size):
            if i != j:
                entries[i, j] = weight
    return InteractionMatrix(entries)


def build_regular_matrix(edges: Iterable[Tuple[int, int]], n: int, d: int) -> InteractionMatrix:
    """
    Нормована матриця суміжності R d-регулярного графа з ізольованим агентом 0

    R_00 = 1, R_ij = 1/d для ребер {i, j}, решта нулі.

    Args:
        edges: Ребра графа на вершинах 1..n
        n: Кількість вершин
        d: Степінь

    Returns:
        Точна рядково-стохастична матриця розміру (n+1) x (n+1)
    """
    if d < 1:
        raise ConstructionError(f"Степінь має бути додатним, отримано d={d}")
    graph = regular_graph(edges, n, d)
    entries = EXACT.zeros((n + 1, n + 1))
    entries[0, 0] = Fraction(1)
    weight = Fraction(1, d)
    for u, v in graph.edges():
        entries[u, v] = weight
        entries[v, u] = weight
    return InteractionMatrix(entries)


def mix_matrices(clique: InteractionMatrix, regular: InteractionMatrix, delta) -> InteractionMatrix:
    """
    Опукла комбінація P^(delta) = (1 - delta) C + delta R

    Args:
        clique: Матриця C
        regular: Матриця R
        delta: Вага R, 0 <= delta <= 1

    Returns:
        Рядково-стохастична суміш (точна, якщо обидві матриці точні)
    """
    if clique.entries.shape != regular.entries.shape:
        raise ConstructionError(
            f"Розміри матриць не збігаються: {clique.entries.shape} та {regular.entries.shape}"
        )
    exact = clique.is_exact and regular.is_exact and not isinstance(delta, float)
    if exact:
        delta = parse_scalar(delta)
    if not 0 <= delta <= 1:
        raise ConstructionError(f"delta має лежати в [0, 1], отримано {delta}")

    if exact:
        mixed = (1 - delta) * clique.entries + delta * regular.entries
    else:
        delta = float(delta)
        mixed = (1 - delta) * clique.entries.astype(float) + delta * regular.entries.astype(float)
    return InteractionMatrix(np.asarray(mixed))
