# -*- coding: utf-8 -*-
"""
Точні перебірні розв'язувачі: L0-бюджет та концентровані розподіли L1-бюджету
"""

import logging
import math
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from config import SETTINGS
from models.errors import GuardRefusal
from models.instance import BudgetSpec, Norm, OpinionInstance
from models.scalar import Backend, EXACT, parse_scalar
from optimizers.base import OptimizationResult, Optimizer
from services.equilibrium import objective_batch

logger = logging.getLogger(__name__)

Candidate = Tuple[Dict[str, Any], np.ndarray]


def endpoint_options(instance: OpinionInstance, i: int) -> List[Fraction]:
    """Кінці інтервалу [l_i, u_i], відмінні від alpha^_i, у зростаючому порядку"""
    values = sorted({instance.lower[i], instance.upper[i]})
    return [v for v in values if v != instance.alpha_init[i]]


class EnumerationOptimizer(Optimizer):
    """
    Спільна частина перебірних розв'язувачів

    Кандидати спершу оцінюються пакетно у float, після чого в точному
    режимі всі кандидати в межах screen_tol від float-мінімуму
    перераховуються точно. Переможець: мінімальне f, при рівності
    перший у порядку перебору.
    """

    def __init__(self, instance: OpinionInstance, budget: BudgetSpec, backend: Backend = EXACT,
                 limit: int = SETTINGS.enumeration_limit, max_candidates: int = SETTINGS.max_grid_points,
                 screen_tol: float = SETTINGS.screen_tol):
        super().__init__(instance, budget, backend)
        self.limit = limit
        self.max_candidates = max_candidates
        self.screen_tol = screen_tol
        self.agents = instance.modifiable_agents
        if len(self.agents) > limit:
            raise GuardRefusal(
                f"{len(self.agents)} змінних агентів перевищує межу перебору {limit}"
            )

    def _guard_count(self, count: int) -> None:
        if count > self.max_candidates:
            raise GuardRefusal(f"{count} кандидатів перевищує межу {self.max_candidates}")
        logger.debug("%s: %d кандидатів", self.method, count)

    def _select(self, candidates: Sequence[Candidate]) -> Candidate:
        P = self.instance.interaction.entries.astype(float)
        s = self.instance.innate.astype(float)
        alphas = np.array([alpha.astype(float) for _, alpha in candidates])
        batch = SETTINGS.grid_batch_size
        values = np.concatenate([objective_batch(P, s, alphas[start:start + batch])
                                 for start in range(0, len(alphas), batch)])

        best_float = float(values.min())
        if not self.backend.exact:
            return candidates[int(np.argmin(values))]

        margin = self.screen_tol * max(1.0, abs(best_float))
        shortlist = [index for index in np.flatnonzero(values <= best_float + margin)]
        logger.debug("%s: %d кандидатів у точному відборі", self.method, len(shortlist))
        best_index, best_value = None, None
        for index in shortlist:
            value = self.evaluate(candidates[index][1])
            if best_value is None or value < best_value:
                best_index, best_value = int(index), value
        return candidates[best_index]


class L0Optimizer(EnumerationOptimizer):
    """
    Точний розв'язувач для L0-бюджету

    Перебирає всі підмножини змінних агентів розміру не більше k і для
    кожного обраного агента всі кінці інтервалу, відмінні від alpha^_i.
    """

    method = "l0-enumeration"

    def __init__(self, instance: OpinionInstance, k: int, backend: Backend = EXACT, **kwargs):
        super().__init__(instance, BudgetSpec(Norm.L0, parse_scalar(k)), backend, **kwargs)
        self.k = int(k)

    def _candidates(self) -> List[Candidate]:
        base = EXACT.array(self.instance.alpha_init)
        options = {i: endpoint_options(self.instance, i) for i in self.agents}
        size = min(self.k, len(self.agents))
        self._guard_count(sum(math.comb(len(self.agents), t) * 2 ** t for t in range(size + 1)))

        candidates = []
        for t in range(size + 1):
            for subset in combinations(self.agents, t):
                for values in product(*(options[i] for i in subset)):
                    alpha = base.copy()
                    for i, value in zip(subset, values):
                        alpha[i] = value
                    candidates.append(({"subset": subset, "values": values}, alpha))
        return candidates

    def optimize(self) -> OptimizationResult:
        """
        Returns:
            OptimizationResult з сертифікатом {"subset": T, "values": ...}
        """
        self.initial_value = self.evaluate(self.instance.alpha_init)
        certificate, alpha = self._select(self._candidates())
        return self._finish(alpha, dict(certificate, subset=list(certificate["subset"]),
                                        values=list(certificate["values"])))


class ConcentratedL1Optimizer(EnumerationOptimizer):
    """
    Розв'язувач для L1-бюджету на сім'ї концентрованих розподілів

    До floor(k) агентів переводяться повністю у кінці своїх інтервалів,
    а залишок бюджету може отримати ще один агент (в будь-якому напрямку).
    Для нецілого k це евристика.
    """

    method = "l1-concentrated"

    def __init__(self, instance: OpinionInstance, k, backend: Backend = EXACT, **kwargs):
        k = parse_scalar(k)
        super().__init__(instance, BudgetSpec(Norm.L1, k), backend, **kwargs)
        self.k = k

    def _fractional_moves(self, alpha: np.ndarray, subset: Tuple[int, ...], remainder: Fraction):
        """Додатковий агент поза subset отримує залишок бюджету"""
        for j in self.agents:
            if j in subset:
                continue
            start = self.instance.alpha_init[j]
            down = min(remainder, start - self.instance.lower[j])
            up = min(remainder, self.instance.upper[j] - start)
            for value in (start - down, start + up):
                if value != start:
                    moved = alpha.copy()
                    moved[j] = value
                    yield j, value, moved

    def _candidates(self) -> List[Candidate]:
        base = EXACT.array(self.instance.alpha_init)
        options = {i: endpoint_options(self.instance, i) for i in self.agents}
        m = len(self.agents)
        size = min(math.floor(self.k), m)
        self._guard_count(sum(math.comb(m, t) * 2 ** t * (1 + 2 * (m - t)) for t in range(size + 1)))

        candidates = []
        for t in range(size + 1):
            for subset in combinations(self.agents, t):
                for values in product(*(options[i] for i in subset)):
                    cost = sum(abs(v - self.instance.alpha_init[i]) for i, v in zip(subset, values))
                    if cost > self.k:
                        continue
                    alpha = base.copy()
                    for i, value in zip(subset, values):
                        alpha[i] = value
                    certificate = {"subset": list(subset), "values": list(values), "fractional": None}
                    candidates.append((certificate, alpha))
                    remainder = self.k - cost
                    if remainder > 0:
                        for j, value, moved in self._fractional_moves(alpha, subset, remainder):
                            candidates.append((dict(certificate, fractional=(j, value)), moved))
        return candidates

    def optimize(self) -> OptimizationResult:
        """
        Returns:
            OptimizationResult з сертифікатом {"subset": T, "values": ..., "fractional": (агент, значення)}
        """
        self.initial_value = self.evaluate(self.instance.alpha_init)
        certificate, alpha = self._select(self._candidates())
        certificate = dict(certificate, heuristic=self.k.denominator != 1)
        return self._finish(alpha, certificate)


def solve_L0(instance: OpinionInstance, k: int, backend: Backend = EXACT) -> OptimizationResult:
    """Точний мінімум f при ||alpha - alpha^||_0 <= k"""
    return L0Optimizer(instance, k, backend).optimize()


def solve_L1_concentrated(instance: OpinionInstance, k, backend: Backend = EXACT) -> OptimizationResult:
    """Точний мінімум f на концентрованих розподілах L1-бюджету k"""
    return ConcentratedL1Optimizer(instance, k, backend).optimize()
