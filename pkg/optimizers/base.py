# -*- coding: utf-8 -*-
"""
Базовий клас для оптимізаторів
"""

import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from config import SETTINGS
from models.instance import BudgetSpec, Norm, OpinionInstance, ResistanceVector
from models.scalar import Backend, EXACT, Scalar, get_backend
from services.equilibrium import objective


@dataclass
class OptimizationResult:
    """
    Результат оптимізації

    Attributes:
        alpha_star: Знайдений вектор опору з обліком бюджету
        f_star: f(alpha_star), перераховане незалежно
        method: Назва методу
        budget: Обмеження бюджету
        certificate: Дані, специфічні для методу (підмножина T, траєкторія тощо)
        trace: Значення f по ітераціях
        oracle: Результат є оракулом (сітка), а не точним розв'язком
    """
    alpha_star: ResistanceVector
    f_star: Scalar
    method: str
    budget: BudgetSpec
    certificate: Dict[str, Any] = field(default_factory=dict)
    trace: List[Scalar] = field(default_factory=list)
    oracle: bool = False

    @property
    def l0_used(self) -> int:
        return self.alpha_star.l0_used

    @property
    def l1_used(self) -> Scalar:
        return self.alpha_star.l1_used


class Optimizer(ABC):
    """
    Абстрактний базовий клас для всіх оптимізаторів
    """

    method = ""

    def __init__(self, instance: OpinionInstance, budget: Optional[BudgetSpec] = None,
                 backend: Backend = EXACT):
        """
        Ініціалізація оптимізатора

        Args:
            instance: Екземпляр задачі
            budget: Обмеження бюджету (за замовчуванням без бюджету)
            backend: Арифметика обчислення f
        """
        self.instance = instance
        self.budget = budget if budget is not None else BudgetSpec(Norm.UNBUDGETED)
        self.backend = get_backend(backend)
        self.initial_value = None
        self.final_value = None
        self.optimization_history = []
        self.result: Optional[OptimizationResult] = None

    @abstractmethod
    def optimize(self) -> OptimizationResult:
        """
        Виконує оптимізацію

        Returns:
            OptimizationResult
        """
        pass

    def evaluate(self, alpha) -> Scalar:
        """f(alpha) у бекенді оптимізатора"""
        return objective(self.instance, alpha, self.backend)

    def _finish(self, alpha, certificate: Dict[str, Any], trace: Optional[List[Scalar]] = None,
                oracle: bool = False) -> OptimizationResult:
        """
        Перевіряє допустимість alpha, перераховує f і зберігає результат

        Raises:
            RuntimeError: Якщо знайдений вектор порушує коробку або бюджет
        """
        vector = ResistanceVector.from_alpha(alpha, self.instance.alpha_init)
        tol = 0.0 if self.backend.exact else SETTINGS.residual_tol
        if not vector.within_bounds(self.instance, tol):
            raise RuntimeError(f"{self.method}: alpha* виходить за межі коробки")
        if not self.budget.admits(vector, tol):
            raise RuntimeError(f"{self.method}: alpha* перевищує бюджет {self.budget.k}")

        self.final_value = self.evaluate(vector.alpha)
        self.result = OptimizationResult(
            alpha_star=vector,
            f_star=self.final_value,
            method=self.method,
            budget=self.budget,
            certificate=certificate,
            trace=list(trace) if trace is not None else list(self.optimization_history),
            oracle=oracle,
        )
        return self.result

    def get_improvement(self) -> Dict[str, float]:
        """
        Обчислює покращення після оптимізації

        Returns:
            Словник з метриками покращення
        """
        if self.initial_value is None or self.final_value is None:
            return {}

        absolute_improvement = float(self.initial_value) - float(self.final_value)
        initial = float(self.initial_value)
        percentage_improvement = (absolute_improvement / initial) * 100 if initial else 0.0

        return {
            'initial_value': float(self.initial_value),
            'final_value': float(self.final_value),
            'absolute_improvement': absolute_improvement,
            'percentage_improvement': percentage_improvement
        }

    def print_results(self, file=None) -> None:
        """
        Виводить результати оптимізації
        """
        file = file if file is not None else sys.stdout
        improvement = self.get_improvement()

        if not improvement or self.result is None:
            print("Оптимізація ще не виконана", file=file)
            return

        print("\n" + "=" * 60, file=file)
        print(f"РЕЗУЛЬТАТИ ОПТИМІЗАЦІЇ ({self.method})", file=file)
        print("=" * 60, file=file)
        print(f"\nf(alpha^):             {improvement['initial_value']:.12g}", file=file)
        print(f"f(alpha*):             {improvement['final_value']:.12g}", file=file)
        print(f"\n{'─' * 60}", file=file)
        print(f"Покращення:            {improvement['absolute_improvement']:.12g}", file=file)
        print(f"Покращення (%):        {improvement['percentage_improvement']:.2f}%", file=file)
        print(f"L0 / L1 використано:   {self.result.l0_used} / {float(self.result.l1_used):.6g}", file=file)
        print("=" * 60, file=file)
