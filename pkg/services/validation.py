# -*- coding: utf-8 -*-
"""
Діагностика екземпляра: передумови збіжності динаміки
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List

from config import SETTINGS
from models.instance import OpinionInstance

logger = logging.getLogger(__name__)


class Violation(Enum):
    """Коди порушених інваріантів"""
    NEGATIVE_ENTRY = "negative entry"
    ROW_NOT_STOCHASTIC = "row not stochastic"
    INNATE_RANGE = "innate out of range"
    BOUNDS = "bounds violated"
    ALPHA_OUTSIDE_BOUNDS = "alpha outside bounds"
    NO_POSITIVE_LOWER_BOUND = "no positive lower bound"
    REDUCIBLE = "reducible"


@dataclass(frozen=True)
class Issue:
    """Одне порушення з описом місця"""
    violation: Violation
    detail: str

    def __str__(self):
        return f"{self.violation.value}: {self.detail}"


def validate_instance(instance: OpinionInstance, row_sum_tol: float = SETTINGS.row_sum_tol) -> List[Issue]:
    """
    Перевіряє всі передумови екземпляра, нічого не перериваючи

    Рядкові суми перевіряються точно для дробових матриць і з допуском
    row_sum_tol для float. Незвідність визначається сильною зв'язністю
    орієнтованого графа ненульових елементів P.

    Args:
        instance: Екземпляр задачі
        row_sum_tol: Допуск для рядкових сум у float-режимі

    Returns:
        Список порушень (порожній, якщо екземпляр коректний)
    """
    issues: List[Issue] = []
    matrix = instance.interaction
    entries = matrix.entries

    for i in range(matrix.n_agents):
        negative = [j for j in range(matrix.n_agents) if entries[i, j] < 0]
        if negative:
            issues.append(Issue(Violation.NEGATIVE_ENTRY, f"рядок {i}, стовпці {negative}"))
        total = entries[i].sum()
        off = total != 1 if matrix.is_exact else abs(float(total) - 1.0) > row_sum_tol
        if off:
            issues.append(Issue(Violation.ROW_NOT_STOCHASTIC, f"рядок {i} має суму {total}"))

    for i in range(instance.n_agents):
        s_i = instance.innate[i]
        if not 0 <= s_i <= 1:
            issues.append(Issue(Violation.INNATE_RANGE, f"агент {i}: s={s_i}"))
        low, high = instance.lower[i], instance.upper[i]
        if not 0 <= low <= high <= 1:
            issues.append(Issue(Violation.BOUNDS, f"агент {i}: [{low}, {high}]"))
        elif not low <= instance.alpha_init[i] <= high:
            issues.append(Issue(
                Violation.ALPHA_OUTSIDE_BOUNDS,
                f"агент {i}: alpha_init={instance.alpha_init[i]} поза [{low}, {high}]",
            ))

    if not any(low > 0 for low in instance.lower):
        issues.append(Issue(Violation.NO_POSITIVE_LOWER_BOUND, "усі l_i = 0"))

    if not matrix.is_irreducible():
        issues.append(Issue(Violation.REDUCIBLE, "граф підтримки P не є сильно зв'язним"))

    if issues:
        logger.debug("Екземпляр %r: %d порушень", instance.label, len(issues))
    return issues
