# -*- coding: utf-8 -*-
"""
Розв'язання вершинного покриття через задачу про сприйнятливість
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from config import SETTINGS
from models.instance import Norm
from models.scalar import EXACT
from optimizers.base import OptimizationResult
from optimizers.enumeration import solve_L0, solve_L1_concentrated
from optimizers.grid import GridOptimizer
from reduction.gadgets import (NoInstanceChain, ReductionArtifact, YesCertificate, build_l0_reduction,
                               build_l1_reduction, certify_yes, no_instance_chain)
from reduction.vertex_cover import VertexCoverInstance, vc_bruteforce
from services.clique import DeltaVariant

logger = logging.getLogger(__name__)

CROSS_CHECK_LIMIT = 6
CROSS_CHECK_RESOLUTION = Fraction(1, 8)
CROSS_CHECK_ROUNDS = 1


@dataclass
class Decision:
    """
    Відповідь YES/NO разом із сертифікатами

    Attributes:
        yes: True, якщо f* <= theta + gap/2
        artifact: Побудований гаджет
        result: Результат точного розв'язувача
        bruteforce_cover: Покриття з повного перебору (None, якщо немає)
        yes_certificate: Перевірка f = theta (для YES)
        no_chain: Ланцюжок нерівностей (для NO)
        grid_value: f* сіткового оракула (L1, |V| <= 6)
        findings: Розбіжності, зафіксовані як спостереження
    """
    yes: bool
    artifact: ReductionArtifact
    result: OptimizationResult
    bruteforce_cover: Optional[Tuple[int, ...]]
    yes_certificate: Optional[YesCertificate] = None
    no_chain: Optional[NoInstanceChain] = None
    grid_value: Optional[float] = None
    findings: List[str] = field(default_factory=list)

    @property
    def f_star(self) -> Fraction:
        return self.result.f_star

    @property
    def agrees(self) -> bool:
        """Відповідь збігається з повним перебором"""
        return self.yes == (self.bruteforce_cover is not None)

    @property
    def separated(self) -> bool:
        """YES: f* = theta; NO: f* >= theta + gap"""
        if self.yes:
            return self.f_star == self.artifact.theta
        return self.f_star >= self.artifact.theta + self.artifact.gap


def _grid_cross_check(decision: Decision) -> None:
    artifact = decision.artifact
    grid = GridOptimizer(artifact.instance, artifact.budget.k, resolution=CROSS_CHECK_RESOLUTION,
                         refine_rounds=CROSS_CHECK_ROUNDS).optimize()
    decision.grid_value = float(grid.f_star)
    exact_value = float(decision.f_star)
    if decision.grid_value < exact_value - SETTINGS.residual_tol * max(1.0, exact_value):
        message = (f"сітка знайшла f = {decision.grid_value:.17g} < {exact_value:.17g} "
                   f"(концентрований мінімум) для {artifact.instance.label}")
        decision.findings.append(message)
        logger.warning("Спостереження: %s", message)


def decide_vc(graph: VertexCoverInstance, kind: Union[Norm, str] = Norm.L0,
              delta: Union[DeltaVariant, str, Fraction] = DeltaVariant.CORRECTED,
              cross_check: bool = True) -> Decision:
    """
    Відповідає на питання "чи має граф вершинне покриття розміру <= k"

    Будує гаджет, знаходить точний мінімум (L0: повний перебір,
    L1: концентровані розподіли) і порівнює з theta + gap/2. Відповідь
    звіряється з повним перебором покриттів.

    Args:
        graph: d-регулярний граф і k
        kind: Norm.L0 або Norm.L1 (або "l0" / "l1")
        delta: Варіант delta для L1
        cross_check: Перевіряти L1 сітковим оракулом при |V| <= 6

    Returns:
        Decision
    """
    kind = Norm(kind)
    if kind is Norm.L0:
        artifact = build_l0_reduction(graph)
        result = solve_L0(artifact.instance, graph.k, EXACT)
    elif kind is Norm.L1:
        artifact = build_l1_reduction(graph, delta)
        result = solve_L1_concentrated(artifact.instance, graph.k, EXACT)
    else:
        raise ValueError(f"Зведення визначене лише для L0 та L1, отримано {kind.value}")

    yes = result.f_star <= artifact.theta + artifact.gap / 2
    decision = Decision(yes=yes, artifact=artifact, result=result, bruteforce_cover=vc_bruteforce(graph))
    subset = tuple(result.certificate.get("subset", ()))

    if yes:
        cover = subset if graph.is_cover(subset) else decision.bruteforce_cover
        if cover is not None:
            decision.yes_certificate = certify_yes(artifact, cover)
    elif not graph.is_cover(subset):
        decision.no_chain = no_instance_chain(artifact, subset)

    if kind is Norm.L1 and cross_check and graph.n <= CROSS_CHECK_LIMIT:
        _grid_cross_check(decision)

    if not decision.agrees:
        logger.warning("Відповідь %s не збігається з повним перебором для %s",
                       "YES" if yes else "NO", artifact.instance.label)
    logger.info("%s: %s, f* = %s, theta = %s", artifact.instance.label,
                "YES" if yes else "NO", result.f_star, artifact.theta)
    return decision
