# -*- coding: utf-8 -*-
"""
Сітковий оракул для L1-бюджету: повний перебір сітки з локальним уточненням
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from config import SETTINGS
from models.errors import GuardRefusal
from models.instance import BudgetSpec, Norm, OpinionInstance
from models.scalar import FLOAT, parse_scalar
from optimizers.base import OptimizationResult, Optimizer
from services.equilibrium import objective_batch

logger = logging.getLogger(__name__)

BUDGET_SLACK = 1e-12


class GridOptimizer(Optimizer):
    """
    Оракул повного перебору сітки допустимих alpha

    Сітка координати i: {l_i + m h} ∪ {u_i, alpha^_i}. Перебір іде
    покоординатно з відсіканням за бюджетом; після нього refine_rounds
    разів крок зменшується вчетверо у вікні ±1 попередньої клітинки
    навколо поточного лідера. Результат позначається як оракул.
    """

    method = "l1-grid"

    def __init__(self, instance: OpinionInstance, k, resolution=SETTINGS.grid_resolution,
                 refine_rounds: int = SETTINGS.grid_refine_rounds,
                 agent_limit: int = SETTINGS.grid_agent_limit,
                 max_points: int = SETTINGS.max_grid_points):
        """
        Args:
            instance: Екземпляр задачі
            k: L1-бюджет
            resolution: Крок сітки h
            refine_rounds: Кількість раундів уточнення
            agent_limit: Максимальна кількість змінних агентів
            max_points: Максимальна кількість точок у переборі
        """
        self.k = parse_scalar(k)
        super().__init__(instance, BudgetSpec(Norm.L1, self.k), FLOAT)
        self.resolution = parse_scalar(resolution)
        self.refine_rounds = refine_rounds
        self.max_points = max_points
        self.agents = instance.modifiable_agents
        if len(self.agents) > agent_limit:
            raise GuardRefusal(f"{len(self.agents)} змінних агентів перевищує межу сітки {agent_limit}")
        if self.resolution <= 0:
            raise ValueError(f"Крок сітки має бути додатним, отримано {self.resolution}")
        self.points_evaluated = 0

    def _coarse_axis(self, i: int) -> np.ndarray:
        low, high = self.instance.lower[i], self.instance.upper[i]
        count = int((high - low) / self.resolution)
        values = {low + m * self.resolution for m in range(count + 1)}
        values.update({high, self.instance.alpha_init[i]})
        return np.array(sorted(float(v) for v in values))

    def _local_axis(self, i: int, center: float, step: float) -> np.ndarray:
        low, high = float(self.instance.lower[i]), float(self.instance.upper[i])
        values = center + step * np.arange(-4, 5)
        return np.unique(np.clip(values, low, high))

    def _enumerate(self, axes: Sequence[np.ndarray]) -> np.ndarray:
        """Усі комбінації осей з L1-вартістю <= k (порядок лексикографічний)"""
        start = np.array([float(self.instance.alpha_init[i]) for i in self.agents])
        budget = float(self.k) + BUDGET_SLACK
        points = np.zeros((1, 0))
        cost = np.zeros(1)
        for position, axis in enumerate(axes):
            step_cost = np.abs(axis - start[position])
            total = cost[:, None] + step_cost[None, :]
            keep = total <= budget
            size = int(keep.sum())
            if size > self.max_points:
                raise GuardRefusal(f"Сітка має понад {self.max_points} точок (крок {position + 1})")
            rows, cols = np.nonzero(keep)
            points = np.hstack([points[rows], axis[cols][:, None]])
            cost = total[rows, cols]
        return points

    def _best(self, points: np.ndarray):
        P = self.instance.interaction.entries.astype(float)
        s = self.instance.innate.astype(float)
        full = np.tile(self.instance.alpha_init.astype(float), (len(points), 1))
        full[:, list(self.agents)] = points
        batch = SETTINGS.grid_batch_size
        values = np.concatenate([objective_batch(P, s, full[start:start + batch])
                                 for start in range(0, len(full), batch)])
        self.points_evaluated += len(points)
        index = int(np.argmin(values))
        return full[index], float(values[index])

    def optimize(self) -> OptimizationResult:
        """
        Returns:
            OptimizationResult з oracle=True
        """
        self.initial_value = self.evaluate(self.instance.alpha_init)
        if not self.agents:
            return self._finish(self.instance.alpha_init, {"points": 0}, [self.initial_value], oracle=True)

        axes = [self._coarse_axis(i) for i in self.agents]
        alpha, value = self._best(self._enumerate(axes))
        trace = [value]
        step = float(self.resolution)
        for round_index in range(self.refine_rounds):
            step /= 4
            axes = [self._local_axis(i, alpha[i], step) for i in self.agents]
            candidate, candidate_value = self._best(self._enumerate(axes))
            if candidate_value < value:
                alpha, value = candidate, candidate_value
            trace.append(value)
            logger.debug("Уточнення %d: f = %.15g", round_index + 1, value)

        logger.info("Сітка: %d точок, f = %.15g", self.points_evaluated, value)
        certificate = {"resolution": str(self.resolution), "refine_rounds": self.refine_rounds,
                       "points": self.points_evaluated}
        return self._finish(alpha, certificate, trace, oracle=True)


def solve_L1_grid(instance: OpinionInstance, k, resolution=SETTINGS.grid_resolution,
                  refine_rounds: int = SETTINGS.grid_refine_rounds) -> OptimizationResult:
    """Сітковий оракул для L1-бюджету k"""
    return GridOptimizer(instance, k, resolution, refine_rounds).optimize()


def concentration_gaps(result: OptimizationResult, instance: OpinionInstance) -> List[float]:
    """Відстань кожної координати alpha* до найближчого з {alpha^_i, u_i}"""
    alpha = result.alpha_star.alpha
    return [
        min(abs(float(alpha[i]) - float(instance.alpha_init[i])), abs(float(alpha[i]) - float(instance.upper[i])))
        for i in range(instance.n_agents)
    ]


def is_concentrated(result: OptimizationResult, instance: OpinionInstance,
                    cell: Optional[Fraction] = None) -> bool:
    """
    Чи лежить кожна координата alpha* в межах однієї клітинки від {alpha^_i, u_i}

    Args:
        result: Результат сіткового оракула
        instance: Екземпляр задачі
        cell: Розмір клітинки (за замовчуванням крок сітки з сертифіката)

    Returns:
        True, якщо розподіл бюджету концентрований
    """
    if cell is None:
        cell = Fraction(result.certificate.get("resolution", str(SETTINGS.grid_resolution)))
    return all(gap <= float(cell) + BUDGET_SLACK for gap in concentration_gaps(result, instance))
