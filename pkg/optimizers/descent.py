# -*- coding: utf-8 -*-
"""
Проєктований градієнтний спуск для L1-бюджету (евристика)
"""

import logging
import sys
from typing import Optional

import numpy as np

from config import SETTINGS
from models.instance import BudgetSpec, Norm, OpinionInstance
from models.scalar import FLOAT, parse_scalar
from optimizers.base import OptimizationResult, Optimizer
from services.distance import project_box_l1
from services.equilibrium import system_matrix

logger = logging.getLogger(__name__)


class ProjectedDescentOptimizer(Optimizer):
    """
    Спуск alpha <- Proj(alpha - t ∇f) на {alpha у коробці : ||alpha - alpha^||_1 <= k}

    Крок приймається лише при строгому зменшенні f; інакше t ділиться
    навпіл (до max_halvings разів). Траєкторія f тому не зростає.
    Градієнт береться у формі c_i (s_i - (Pz)_i), визначеній і при alpha_i = 1.
    """

    method = "l1-descent"

    def __init__(self, instance: OpinionInstance, k, steps: int = SETTINGS.descent_steps,
                 step_size: float = SETTINGS.descent_step_size,
                 max_halvings: int = SETTINGS.descent_max_halvings, start=None):
        """
        Args:
            instance: Екземпляр задачі
            k: L1-бюджет
            steps: Максимальна кількість прийнятих кроків
            step_size: Початковий крок t
            max_halvings: Максимальна кількість поділів кроку навпіл
            start: Початкова точка (за замовчуванням alpha^); проєктується на допустиму множину
        """
        self.k = parse_scalar(k)
        super().__init__(instance, BudgetSpec(Norm.L1, self.k), FLOAT)
        self.steps = steps
        self.step_size = step_size
        self.max_halvings = max_halvings
        self.start = start
        self.center = instance.alpha_init.astype(float)
        self.lower = instance.lower.astype(float)
        self.upper = instance.upper.astype(float)
        self.P = instance.interaction.entries.astype(float)
        self.s = instance.innate.astype(float)

    def project(self, point: np.ndarray) -> np.ndarray:
        return project_box_l1(point, self.center, self.lower, self.upper, float(self.k))

    def value_and_gradient(self, alpha: np.ndarray):
        """f(alpha) та градієнт c ⊙ (s - Pz)"""
        X = system_matrix(self.instance, alpha, FLOAT)
        M = np.linalg.inv(X)
        z = M @ (alpha * self.s)
        c = M.sum(axis=0)
        return float(z.sum()), c * (self.s - self.P @ z)

    def optimize(self, verbose: bool = False) -> OptimizationResult:
        """
        Returns:
            OptimizationResult з траєкторією f у trace
        """
        self.initial_value = self.evaluate(self.instance.alpha_init)
        alpha = self.project(self.center if self.start is None else np.asarray(self.start, dtype=float))
        value, grad = self.value_and_gradient(alpha)
        self.optimization_history = [value]
        halvings_total = 0
        stalled = False

        for step in range(self.steps):
            t = self.step_size
            accepted = False
            for _ in range(self.max_halvings + 1):
                candidate = self.project(alpha - t * grad)
                if np.max(np.abs(candidate - alpha)) == 0:
                    break
                candidate_value, candidate_grad = self.value_and_gradient(candidate)
                if candidate_value < value:
                    accepted = True
                    break
                t /= 2
                halvings_total += 1

            if not accepted:
                stalled = True
                logger.debug("Спуск зупинився на кроці %d", step)
                break
            alpha, value, grad = candidate, candidate_value, candidate_grad
            self.optimization_history.append(value)
            if verbose:
                print(f"Крок {step + 1}: f = {value:.15g}, t = {t:.3g}", file=sys.stderr)

        certificate = {"accepted_steps": len(self.optimization_history) - 1,
                       "halvings": halvings_total, "stalled": stalled}
        return self._finish(alpha, certificate)


def solve_L1_projected_descent(instance: OpinionInstance, k, steps: int = SETTINGS.descent_steps,
                               step_size: float = SETTINGS.descent_step_size,
                               start: Optional[np.ndarray] = None) -> OptimizationResult:
    """Проєктований спуск для L1-бюджету k"""
    return ProjectedDescentOptimizer(instance, k, steps, step_size, start=start).optimize()
