# -*- coding: utf-8 -*-
"""
Класи екземпляра задачі про сприйнятливість думок
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Tuple

import networkx as nx
import numpy as np

from models.errors import InstanceError
from models.scalar import Scalar, parse_scalar
from services.distance import l0_distance, l1_distance


def _frozen(values, dtype=None) -> np.ndarray:
    array = np.array(values, dtype=dtype if dtype is not None else np.asarray(values).dtype)
    array.setflags(write=False)
    return array


def _native(values) -> np.ndarray:
    """Зберігає дроби як object-масив, решту як float64"""
    source = np.asarray(values, dtype=object)
    if all(isinstance(v, (Fraction, int, np.integer)) and not isinstance(v, (bool, np.bool_)) for v in source.flat):
        return _frozen([parse_scalar(v) for v in source.flat], dtype=object).reshape(source.shape)
    return _frozen(np.asarray(values, dtype=float))


@dataclass(frozen=True, eq=False)
class InteractionMatrix:
    """Рядково-стохастична матриця впливу P розміру |N| x |N|"""
    entries: np.ndarray

    def __post_init__(self):
        entries = _native(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InstanceError(f"Матриця взаємодії має бути квадратною, отримано форму {entries.shape}")
        object.__setattr__(self, 'entries', entries)

    @property
    def n_agents(self) -> int:
        return self.entries.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.entries.dtype == object

    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    def support_digraph(self) -> nx.DiGraph:
        """Орієнтований граф ненульових елементів P"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n_agents))
        for i, j in zip(*np.nonzero(self.entries != 0)):
            graph.add_edge(int(i), int(j))
        return graph

    def is_irreducible(self) -> bool:
        return nx.is_strongly_connected(self.support_digraph())

    def __repr__(self):
        return f"InteractionMatrix(n_agents={self.n_agents}, exact={self.is_exact})"


@dataclass(frozen=True, eq=False)
class OpinionInstance:
    """
    Вхід задачі: вроджені думки s, межі [l_i, u_i], початкові alpha та матриця P
    """
    innate: np.ndarray
    bounds: np.ndarray
    alpha_init: np.ndarray
    interaction: InteractionMatrix
    label: str = ""

    def __post_init__(self):
        innate = _native(self.innate)
        bounds = _native(self.bounds)
        alpha_init = _native(self.alpha_init)
        n = self.interaction.n_agents
        if innate.shape != (n,):
            raise InstanceError(f"Вектор innate має довжину {innate.shape}, очікується {n}")
        if alpha_init.shape != (n,):
            raise InstanceError(f"Вектор alpha_init має довжину {alpha_init.shape}, очікується {n}")
        if bounds.shape != (n, 2):
            raise InstanceError(f"Межі мають форму {bounds.shape}, очікується ({n}, 2)")
        object.__setattr__(self, 'innate', innate)
        object.__setattr__(self, 'bounds', bounds)
        object.__setattr__(self, 'alpha_init', alpha_init)

    @property
    def n_agents(self) -> int:
        return self.interaction.n_agents

    @property
    def lower(self) -> np.ndarray:
        return self.bounds[:, 0]

    @property
    def upper(self) -> np.ndarray:
        return self.bounds[:, 1]

    @property
    def modifiable_agents(self) -> Tuple[int, ...]:
        """Агенти з невиродженим інтервалом l_i < u_i"""
        return tuple(i for i in range(self.n_agents) if self.lower[i] < self.upper[i])

    def complement(self) -> 'OpinionInstance':
        """
        Відображення простору думок x -> 1 - x

        Мінімізація суми думок для доповнення еквівалентна максимізації
        для початкового екземпляра: f(alpha) + f_compl(alpha) = |N|.
        """
        flipped = np.array([1 - v for v in self.innate], dtype=self.innate.dtype)
        return OpinionInstance(
            innate=flipped,
            bounds=self.bounds,
            alpha_init=self.alpha_init,
            interaction=self.interaction,
            label=f"{self.label}~" if self.label else "complement",
        )

    def __repr__(self):
        return f"OpinionInstance(label={self.label!r}, agents={self.n_agents})"


def complement_instance(instance: OpinionInstance) -> OpinionInstance:
    """Доповнення екземпляра (s -> 1 - s)"""
    return instance.complement()


class Norm(Enum):
    """Тип бюджету"""
    UNBUDGETED = "none"
    L0 = "l0"
    L1 = "l1"


@dataclass(frozen=True)
class BudgetSpec:
    """Обмеження ||alpha - alpha_init||_b <= k"""
    norm: Norm
    k: Scalar = Fraction(0)

    def __post_init__(self):
        if self.norm is Norm.UNBUDGETED:
            return
        if self.k < 0:
            raise InstanceError(f"Бюджет має бути невід'ємним, отримано {self.k}")
        if self.norm is Norm.L0 and self.k != int(self.k):
            raise InstanceError(f"L0-бюджет має бути цілим, отримано {self.k}")

    def admits(self, vector: 'ResistanceVector', tol: float = 0.0) -> bool:
        """Чи вкладається вектор у бюджет"""
        if self.norm is Norm.UNBUDGETED:
            return True
        if self.norm is Norm.L0:
            return vector.l0_used <= self.k
        if not tol:
            return vector.l1_used <= self.k
        return float(vector.l1_used) <= float(self.k) + tol


@dataclass(frozen=True, eq=False)
class ResistanceVector:
    """Кандидат alpha разом з обліком витраченого бюджету"""
    alpha: np.ndarray
    alpha_init: np.ndarray = field(repr=False)
    l0_used: int = 0
    l1_used: Scalar = Fraction(0)

    @classmethod
    def from_alpha(cls, alpha, alpha_init) -> 'ResistanceVector':
        """
        Створює вектор і рахує L0/L1 відстань від alpha_init

        Args:
            alpha: Новий вектор опору
            alpha_init: Початковий вектор опору

        Returns:
            ResistanceVector з заповненим обліком бюджету
        """
        alpha = _native(alpha)
        alpha_init = np.asarray(alpha_init)
        if alpha.shape != alpha_init.shape:
            raise InstanceError(f"Довжина alpha {alpha.shape} не збігається з alpha_init {alpha_init.shape}")
        return cls(
            alpha=alpha,
            alpha_init=_frozen(alpha_init),
            l0_used=l0_distance(alpha, alpha_init),
            l1_used=l1_distance(alpha, alpha_init),
        )

    def recompute_matches(self) -> bool:
        """Перераховує облік з нуля і порівнює зі збереженим"""
        return (l0_distance(self.alpha, self.alpha_init) == self.l0_used
                and l1_distance(self.alpha, self.alpha_init) == self.l1_used)

    def within_bounds(self, instance: OpinionInstance, tol: float = 0.0) -> bool:
        for value, low, high in zip(self.alpha, instance.lower, instance.upper):
            if self.alpha.dtype == object and instance.bounds.dtype == object:
                if not (low <= value <= high):
                    return False
            elif not (float(low) - tol <= float(value) <= float(high) + tol):
                return False
        return True
