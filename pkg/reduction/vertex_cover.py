# -*- coding: utf-8 -*-
"""
Екземпляр задачі про вершинне покриття та перевірка повним перебором
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Tuple

import networkx as nx

from config import SETTINGS
from models.errors import ConstructionError, GuardRefusal
from models.network import regular_graph


@dataclass(frozen=True)
class VertexCoverInstance:
    """
    Простий d-регулярний граф на вершинах 1..n і цільовий розмір покриття k
    """
    n: int
    edges: Tuple[Tuple[int, int], ...]
    d: int
    k: int

    def __post_init__(self):
        edges = tuple(sorted((min(int(u), int(v)), max(int(u), int(v))) for u, v in self.edges))
        regular_graph(edges, self.n, self.d)
        if not 1 <= self.k <= self.n:
            raise ConstructionError(f"Потрібно 1 <= k <= n, отримано k={self.k}, n={self.n}")
        object.__setattr__(self, 'edges', edges)

    @property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return graph

    def with_k(self, k: int) -> 'VertexCoverInstance':
        """Той самий граф з іншим k"""
        return VertexCoverInstance(self.n, self.edges, self.d, k)

    def uncovered_edges(self, cover: Iterable[int]):
        """Ребра, жоден кінець яких не належить cover"""
        chosen = set(cover)
        return [(u, v) for u, v in self.edges if u not in chosen and v not in chosen]

    def is_cover(self, cover: Iterable[int]) -> bool:
        return not self.uncovered_edges(cover)


def vc_bruteforce(instance: VertexCoverInstance,
                  limit: int = SETTINGS.enumeration_limit) -> Optional[Tuple[int, ...]]:
    """
    Найменше (за розміром, потім лексикографічно) вершинне покриття розміру <= k

    Args:
        instance: Граф і k
        limit: Максимальне n для перебору

    Returns:
        Кортеж вершин покриття або None, якщо покриття розміру <= k не існує
    """
    if instance.n > limit:
        raise GuardRefusal(f"n={instance.n} перевищує межу перебору {limit}")
    vertices = range(1, instance.n + 1)
    for size in range(instance.k + 1):
        for subset in combinations(vertices, size):
            if instance.is_cover(subset):
                return subset
    return None
