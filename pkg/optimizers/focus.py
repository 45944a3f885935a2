# -*- coding: utf-8 -*-
"""
Експеримент "зосередження проти розподілу" бюджету між двома агентами
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from models.instance import OpinionInstance
from models.scalar import Backend, EXACT, Scalar, get_backend, parse_scalar
from services.equilibrium import objective

logger = logging.getLogger(__name__)


@dataclass
class FocusCurve:
    """
    Значення f уздовж прямої alpha_i = t, alpha_j = b - t

    Attributes:
        i: Перший агент
        j: Другий агент
        budget: Сума b = alpha_i + alpha_j
        points: Пари (t, f)
        argmin_t: t з найменшим f (перший при рівності)
        f_min: Найменше f
        is_focus: Мінімум досягається на кінці проміжку t
    """
    i: int
    j: int
    budget: Scalar
    points: List[Tuple[Scalar, Scalar]] = field(default_factory=list)
    argmin_t: Scalar = None
    f_min: Scalar = None
    is_focus: bool = False

    @property
    def t_range(self) -> Tuple[Scalar, Scalar]:
        return self.points[0][0], self.points[-1][0]


def focus_vs_spread(instance: OpinionInstance, i: int, j: int, b, samples: int = 17,
                    backend: Backend = EXACT) -> FocusCurve:
    """
    Обчислює f(t) для alpha_i = t, alpha_j = b - t (решта координат alpha^)

    Проміжок t обрізається так, щоб обидві координати лишалися у своїх
    коробках: t ∈ [max(l_i, b - u_j), min(u_i, b - l_j)].

    Args:
        instance: Екземпляр задачі
        i: Перший агент
        j: Другий агент (j != i)
        b: Сумарне значення, 0 <= b < 2
        samples: Кількість рівномірних точок (>= 2)
        backend: Арифметика

    Returns:
        FocusCurve

    Raises:
        ValueError: Якщо b поза [0, 2) або пряма не перетинає коробки
    """
    backend = get_backend(backend)
    if i == j:
        raise ValueError("Потрібні різні агенти i != j")
    if samples < 2:
        raise ValueError(f"Потрібно щонайменше 2 точки, отримано {samples}")
    b = parse_scalar(b)
    if not 0 <= b < 2:
        raise ValueError(f"Бюджет b має лежати в [0, 2), отримано {b}")
    t_low = max(instance.lower[i], b - instance.upper[j])
    t_high = min(instance.upper[i], b - instance.lower[j])
    if t_low > t_high:
        raise ValueError(f"Пряма alpha_{i} + alpha_{j} = {b} не перетинає коробки")

    curve = FocusCurve(i=i, j=j, budget=b)
    base = EXACT.array(instance.alpha_init)
    for m in range(samples):
        t = t_low + (t_high - t_low) * Fraction(m, samples - 1)
        alpha = base.copy()
        alpha[i], alpha[j] = t, b - t
        value = objective(instance, alpha, backend)
        curve.points.append((t, value))
        if curve.f_min is None or value < curve.f_min:
            curve.argmin_t, curve.f_min = t, value

    curve.is_focus = curve.argmin_t in (t_low, t_high)
    logger.info("Мінімум f = %.12g при t = %s (%s)", float(curve.f_min), curve.argmin_t,
                "зосередження" if curve.is_focus else "розподіл")
    return curve
