# -*- coding: utf-8 -*-
"""
Каталог малих d-регулярних графів для перевірки зведень
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import networkx as nx

from reduction.vertex_cover import VertexCoverInstance


@dataclass(frozen=True)
class CatalogGraph:
    """Іменований граф на вершинах 1..n"""
    name: str
    n: int
    d: int
    edges: Tuple[Tuple[int, int], ...]

    def instance(self, k: int) -> VertexCoverInstance:
        return VertexCoverInstance(self.n, self.edges, self.d, k)

    def instances(self) -> List[VertexCoverInstance]:
        """Екземпляри для всіх k = 1..n"""
        return [self.instance(k) for k in range(1, self.n + 1)]


def from_networkx(name: str, graph: nx.Graph) -> CatalogGraph:
    """
    Переводить граф networkx у CatalogGraph з вершинами 1..n

    Вершини нумеруються в порядку sorted(graph.nodes) (або порядку вставки,
    якщо вершини не порівнюються між собою).
    """
    try:
        nodes = sorted(graph.nodes)
    except TypeError:
        nodes = list(graph.nodes)
    labels = {node: index + 1 for index, node in enumerate(nodes)}
    edges = tuple(sorted((min(labels[u], labels[v]), max(labels[u], labels[v])) for u, v in graph.edges))
    degrees = {deg for _, deg in graph.degree}
    if len(degrees) != 1:
        raise ValueError(f"Граф {name} не є регулярним: степені {sorted(degrees)}")
    return CatalogGraph(name=name, n=len(nodes), d=degrees.pop(), edges=edges)


_BUILDERS: Dict[str, Callable[[], nx.Graph]] = {
    **{f"C{n}": (lambda n=n: nx.cycle_graph(n)) for n in range(3, 9)},
    "K4": lambda: nx.complete_graph(4),
    "prism": lambda: nx.circular_ladder_graph(3),
    "K3,3": lambda: nx.complete_bipartite_graph(3, 3),
    "Q3": lambda: nx.hypercube_graph(3),
    "2C3": lambda: nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(3)),
    "C3+C4": lambda: nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(4)),
    "C4+C4": lambda: nx.disjoint_union(nx.cycle_graph(4), nx.cycle_graph(4)),
    "C3+C5": lambda: nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(5)),
}


def catalog_names() -> List[str]:
    return list(_BUILDERS)


def catalog_graph(name: str) -> CatalogGraph:
    """
    Граф каталогу за назвою

    Raises:
        KeyError: Невідома назва
    """
    if name not in _BUILDERS:
        raise KeyError(f"Невідомий граф {name!r}; доступні: {', '.join(_BUILDERS)}")
    return from_networkx(name, _BUILDERS[name]())


def test_graph_catalog(max_n: int = 8) -> List[CatalogGraph]:
    """
    Усі графи каталогу з n <= max_n

    Args:
        max_n: Найбільша кількість вершин

    Returns:
        Список CatalogGraph у фіксованому порядку
    """
    graphs = [catalog_graph(name) for name in _BUILDERS]
    return [g for g in graphs if g.n <= max_n]


test_graph_catalog.__test__ = False


def random_regular(n: int, d: int, seed: int = 0) -> CatalogGraph:
    """Випадковий простий d-регулярний граф (networkx), відтворюваний за seed"""
    return from_networkx(f"random-{d}-regular-{n}-s{seed}", nx.random_regular_graph(d, n, seed=seed))
