# -*- coding: utf-8 -*-
"""
Гаджети зведення вершинного покриття до задачі про сприйнятливість (L0 та L1)
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union


from models.errors import HypothesisError, InstanceError
from models.instance import BudgetSpec, InteractionMatrix, Norm, OpinionInstance, ResistanceVector
from models.network import build_clique_matrix, build_regular_matrix, mix_matrices
from models.scalar import EXACT, parse_scalar
from reduction.vertex_cover import VertexCoverInstance
from services.clique import DeltaVariant, delta_formula
from services.equilibrium import solve_equilibrium

logger = logging.getLogger(__name__)


@dataclass
class ReductionArtifact:
    """
    Екземпляр задачі, побудований з вершинного покриття

    Attributes:
        instance: OpinionInstance з агентом 0 та вершинами 1..n
        kind: Norm.L0 або Norm.L1
        graph: Вихідний граф і k
        theta: Поріг між YES та NO
        gap: Гарантований відрив NO-екземплярів від порогу
        budget: Бюджет k у відповідній нормі
        delta: Вага R у суміші (лише L1)
        delta_source: "paper", "corrected" або "explicit"
    """
    instance: OpinionInstance
    kind: Norm
    graph: VertexCoverInstance
    theta: Fraction
    gap: Fraction
    budget: BudgetSpec
    delta: Optional[Fraction] = None
    delta_source: Optional[str] = None


def _gadget_instance(n: int, interaction: InteractionMatrix, label: str) -> OpinionInstance:
    """s_0 = alpha^_0 = 1 з I_0 = {1}; s_i = alpha^_i = 0 з I_i = [0, 1]"""
    size = n + 1
    innate = EXACT.zeros(size)
    alpha_init = EXACT.zeros(size)
    bounds = EXACT.zeros((size, 2))
    innate[0] = alpha_init[0] = Fraction(1)
    bounds[0] = [Fraction(1), Fraction(1)]
    for i in range(1, size):
        bounds[i] = [Fraction(0), Fraction(1)]
    return OpinionInstance(innate=innate, bounds=bounds, alpha_init=alpha_init,
                           interaction=interaction, label=label)


def clique_instance(n: int) -> OpinionInstance:
    """Екземпляр з P = C та тими самими s, alpha^ і межами, що й у гаджетів"""
    return _gadget_instance(n, build_clique_matrix(n), f"clique-n{n}")


def build_l0_reduction(graph: VertexCoverInstance) -> ReductionArtifact:
    """
    Гаджет для L0-бюджету

    P_ij = 1/(d+1) для j = 0 та для сусідів j вершини i; рядок 0 має 1/n поза діагоналлю.
    Поріг theta = 1 + (n-k)/(d+1), відрив 2/(d(d+1)).

    Args:
        graph: d-регулярний граф і k

    Returns:
        ReductionArtifact з L0-бюджетом k
    """
    n, d, k = graph.n, graph.d, graph.k
    entries = EXACT.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        entries[0, j] = Fraction(1, n)
    weight = Fraction(1, d + 1)
    for i in range(1, n + 1):
        entries[i, 0] = weight
    for u, v in graph.edges:
        entries[u, v] = weight
        entries[v, u] = weight

    instance = _gadget_instance(n, InteractionMatrix(entries), f"l0-n{n}-d{d}-k{k}")
    return ReductionArtifact(
        instance=instance, kind=Norm.L0, graph=graph,
        theta=1 + Fraction(n - k, d + 1), gap=Fraction(2, d * (d + 1)),
        budget=BudgetSpec(Norm.L0, Fraction(k)),
    )


def l1_theta(n: int, k: int, delta: Fraction) -> Fraction:
    """theta = 1 + (1-delta)(n-k)/(n - (1-delta)(n-k-1))"""
    return 1 + (1 - delta) * (n - k) / (n - (1 - delta) * (n - k - 1))


def l1_gamma0(n: int, k: int, delta: Fraction) -> Fraction:
    """Спільне значення вільних агентів при покритті: (1-delta)/(n - (1-delta)(n-k-1))"""
    return (1 - delta) / (n - (1 - delta) * (n - k - 1))


def build_l1_reduction(graph: VertexCoverInstance,
                       delta: Union[DeltaVariant, str, Fraction] = DeltaVariant.CORRECTED) -> ReductionArtifact:
    """
    Гаджет для L1-бюджету з P^(delta) = (1 - delta) C + delta R

    Args:
        graph: d-регулярний граф і k
        delta: Варіант формули ("paper", "corrected") або явне значення

    Returns:
        ReductionArtifact з L1-бюджетом k, theta та відривом delta/(dn)

    Raises:
        HypothesisError: delta поза [0, d/n)
    """
    n, d, k = graph.n, graph.d, graph.k
    if isinstance(delta, DeltaVariant) or delta in (v.value for v in DeltaVariant):
        variant = DeltaVariant(delta)
        value, source = delta_formula(n, d, variant), variant.value
    else:
        value, source = parse_scalar(delta), "explicit"
    if not 0 <= value < Fraction(d, n):
        raise HypothesisError(f"Потрібно 0 <= delta < d/n = {Fraction(d, n)}, отримано {value}")

    interaction = mix_matrices(build_clique_matrix(n), build_regular_matrix(graph.edges, n, d), value)
    instance = _gadget_instance(n, interaction, f"l1-n{n}-d{d}-k{k}")
    logger.debug("L1-гаджет: n=%d, d=%d, k=%d, delta=%s", n, d, k, value)
    return ReductionArtifact(
        instance=instance, kind=Norm.L1, graph=graph,
        theta=l1_theta(n, k, value), gap=value / (d * n),
        budget=BudgetSpec(Norm.L1, Fraction(k)), delta=value, delta_source=source,
    )


def cover_to_alpha(artifact: ReductionArtifact, cover: Iterable[int]) -> ResistanceVector:
    """
    alpha_0 = 1, alpha_i = 1 для i з T, 0 для решти

    Args:
        artifact: Гаджет
        cover: Множина T ⊆ V, |T| <= k

    Returns:
        ResistanceVector з обліком бюджету |T|
    """
    chosen = sorted(set(cover))
    n, k = artifact.graph.n, artifact.graph.k
    if any(not 1 <= v <= n for v in chosen):
        raise InstanceError(f"T має містити лише вершини з 1..{n}")
    if len(chosen) > k:
        raise InstanceError(f"|T| = {len(chosen)} перевищує бюджет k = {k}")
    alpha = EXACT.array(artifact.instance.alpha_init)
    for v in chosen:
        alpha[v] = Fraction(1)
    return ResistanceVector.from_alpha(alpha, artifact.instance.alpha_init)


class CertStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"


@dataclass
class YesCertificate:
    """Точна перевірка f(cover_to_alpha(T)) = theta"""
    status: CertStatus
    cover: Tuple[int, ...]
    f_value: Optional[Fraction] = None
    theta: Optional[Fraction] = None
    note: str = ""


def certify_yes(artifact: ReductionArtifact, cover: Iterable[int]) -> YesCertificate:
    """
    Перевіряє, що покриття T досягає порогу theta точно

    Покриття розміру менше k доповнюється найменшими вершинами поза T
    до розміру k. Якщо T не є покриттям, результат INAPPLICABLE.

    Args:
        artifact: Гаджет
        cover: Кандидат у вершинне покриття

    Returns:
        YesCertificate
    """
    chosen = tuple(sorted(set(cover)))
    graph = artifact.graph
    if not graph.is_cover(chosen):
        return YesCertificate(CertStatus.INAPPLICABLE, chosen, note="T не є вершинним покриттям")
    if len(chosen) > graph.k:
        return YesCertificate(CertStatus.INAPPLICABLE, chosen, note=f"|T| > k = {graph.k}")

    padded = list(chosen)
    for v in range(1, graph.n + 1):
        if len(padded) >= graph.k:
            break
        if v not in padded:
            padded.append(v)
    padded = tuple(sorted(padded))

    f_value = solve_equilibrium(artifact.instance, cover_to_alpha(artifact, padded)).f_value
    status = CertStatus.PASS if f_value == artifact.theta else CertStatus.FAIL
    if status is CertStatus.FAIL:
        logger.warning("Покриття %s дає f = %s ≠ theta = %s", padded, f_value, artifact.theta)
    return YesCertificate(status, padded, f_value=f_value, theta=artifact.theta)


@dataclass
class NoInstanceChain:
    """
    Проміжні межі аргументу для множини T, що не є покриттям

    Attributes:
        gamma: min z_j серед вільних агентів V \\ T
        gamma0: Нижня межа для gamma
        gamma_hat: min z_j серед кінців непокритих ребер
        gamma_hat_bound: Нижня межа для gamma_hat
        f_value: f(cover_to_alpha(T))
        f_bound: theta + відрив
    """
    cover: Tuple[int, ...]
    gamma: Fraction
    gamma0: Fraction
    gamma_hat: Fraction
    gamma_hat_bound: Fraction
    f_value: Fraction
    f_bound: Fraction
    checks: List[Tuple[str, bool]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(passed for _, passed in self.checks)


def no_instance_chain(artifact: ReductionArtifact, cover: Iterable[int]) -> NoInstanceChain:
    """
    Вимірює нерівності ланцюжка для NO-екземпляра на точній рівновазі

    L0: gamma >= 1/(d+1), gamma_hat >= 1/d.
    L1: gamma >= gamma0, gamma_hat >= gamma0 + delta gamma0 / d,
    f >= theta + 2 delta gamma0 / d >= theta + delta/(dn).

    Args:
        artifact: Гаджет
        cover: T ⊆ V, |T| <= k, що не є покриттям

    Returns:
        NoInstanceChain
    """
    chosen = tuple(sorted(set(cover)))
    graph = artifact.graph
    uncovered = graph.uncovered_edges(chosen)
    if not uncovered:
        raise HypothesisError(f"T = {chosen} є вершинним покриттям")

    z = solve_equilibrium(artifact.instance, cover_to_alpha(artifact, chosen)).z
    free = [v for v in range(1, graph.n + 1) if v not in chosen]
    endpoints = sorted({v for edge in uncovered for v in edge})
    gamma = min(z[v] for v in free)
    gamma_hat = min(z[v] for v in endpoints)
    f_value = z.sum()
    d, n, k = graph.d, graph.n, graph.k

    if artifact.kind is Norm.L0:
        gamma0 = Fraction(1, d + 1)
        hat_bound = Fraction(1, d)
        checks = [("gamma >= 1/(d+1)", gamma >= gamma0), ("gamma_hat >= 1/d", gamma_hat >= hat_bound),
                  ("f >= theta + gap", f_value >= artifact.theta + artifact.gap)]
        f_bound = artifact.theta + artifact.gap
    else:
        delta = artifact.delta
        gamma0 = l1_gamma0(n, k, delta)
        hat_bound = gamma0 + delta * gamma0 / d
        f_bound = artifact.theta + 2 * delta * gamma0 / d
        checks = [("gamma >= gamma0", gamma >= gamma0),
                  ("gamma_hat >= gamma0 + delta gamma0 / d", gamma_hat >= hat_bound),
                  ("f >= theta + 2 delta gamma0 / d", f_value >= f_bound),
                  ("2 delta gamma0 / d >= delta/(dn)", f_bound >= artifact.theta + artifact.gap)]

    return NoInstanceChain(cover=chosen, gamma=gamma, gamma0=gamma0, gamma_hat=gamma_hat,
                           gamma_hat_bound=hat_bound, f_value=f_value, f_bound=f_bound, checks=checks)
