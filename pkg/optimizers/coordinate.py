# -*- coding: utf-8 -*-
"""
Локальний пошук без бюджету: покоординатні перемикання між кінцями інтервалів
"""

import logging
import sys

from models.instance import BudgetSpec, Norm, OpinionInstance
from models.scalar import Backend, EXACT
from optimizers.base import OptimizationResult, Optimizer

logger = logging.getLogger(__name__)


class CoordinateOptimizer(Optimizer):
    """
    Оптимізатор на основі покоординатних перемикань alpha_i між l_i та u_i

    Старт: alpha^ з кожною координатою, округленою до найближчого кінця
    (при рівновіддаленості до l_i). Далі на кожній ітерації виконується
    перемикання з найбільшим зменшенням f; при рівності обирається
    найменший індекс агента.
    """

    method = "local-search"

    def __init__(self, instance: OpinionInstance, backend: Backend = EXACT,
                 max_iterations: int = 10_000):
        """
        Ініціалізація локального пошуку

        Args:
            instance: Екземпляр задачі
            backend: Арифметика обчислення f
            max_iterations: Максимальна кількість перемикань
        """
        super().__init__(instance, BudgetSpec(Norm.UNBUDGETED), backend)
        self.max_iterations = max_iterations

    def _endpoint(self, i: int, upper: bool):
        return self.backend.scalar(self.instance.upper[i] if upper else self.instance.lower[i])

    def _snap(self):
        """Округлює alpha^ до найближчих кінців; повертає (alpha, {агент: чи на u_i})"""
        alpha = self.backend.array(self.instance.alpha_init)
        at_upper = {}
        for i in self.instance.modifiable_agents:
            low, high = self.instance.lower[i], self.instance.upper[i]
            value = self.instance.alpha_init[i]
            at_upper[i] = value - low > high - value
            alpha[i] = self._endpoint(i, at_upper[i])
        return alpha, at_upper

    def optimize(self, verbose: bool = False) -> OptimizationResult:
        """
        Виконує локальний пошук

        Args:
            verbose: Виводити проміжні результати

        Returns:
            OptimizationResult, у якому жодне окреме перемикання не зменшує f
        """
        self.initial_value = self.evaluate(self.instance.alpha_init)
        alpha, at_upper = self._snap()
        current = self.evaluate(alpha)
        self.optimization_history = [current]
        moves = []

        if verbose:
            print(f"\n{'=' * 60}", file=sys.stderr)
            print("ЛОКАЛЬНИЙ ПОШУК ПО КІНЦЯХ ІНТЕРВАЛІВ", file=sys.stderr)
            print(f"{'=' * 60}", file=sys.stderr)
            print(f"f після округлення: {float(current):.12g}", file=sys.stderr)

        iteration = 0
        while iteration < self.max_iterations:
            iteration += 1
            best_value, best_agent = current, None

            for i in self.instance.modifiable_agents:
                flipped = alpha.copy()
                flipped[i] = self._endpoint(i, not at_upper[i])
                value = self.evaluate(flipped)
                if value < best_value:
                    best_value, best_agent = value, i

            if best_agent is None:
                if verbose:
                    print(f"\nНемає покращень на ітерації {iteration}. Зупинка.", file=sys.stderr)
                break

            at_upper[best_agent] = not at_upper[best_agent]
            alpha[best_agent] = self._endpoint(best_agent, at_upper[best_agent])
            current = best_value
            moves.append(best_agent)
            self.optimization_history.append(current)
            if verbose:
                print(f"Ітерація {iteration}: агент {best_agent} перемкнуто, f = {float(current):.12g}",
                      file=sys.stderr)
        else:
            logger.warning("Локальний пошук зупинено після %d ітерацій", self.max_iterations)

        logger.debug("Локальний пошук: %d перемикань", len(moves))
        return self._finish(alpha, {"moves": moves, "iterations": iteration})


def local_search_unbudgeted(instance: OpinionInstance, backend: Backend = EXACT) -> OptimizationResult:
    """Локальний пошук для задачі без бюджету"""
    return CoordinateOptimizer(instance, backend).optimize()
