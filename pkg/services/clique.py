# -*- coding: utf-8 -*-
"""
Аналіз кліки: замкнені формули для P = C, оцінка збурення оберненої матриці,
межа маси M^(delta) та калібрування delta
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import SETTINGS
from models.errors import HypothesisError
from models.instance import InteractionMatrix
from models.network import build_clique_matrix, build_regular_matrix, mix_matrices
from models.scalar import Backend, EXACT, FLOAT, Scalar, get_backend, parse_scalar
from services.linalg import inverse

logger = logging.getLogger(__name__)


def _clique_alpha(alpha, n: int) -> np.ndarray:
    values = EXACT.array(alpha)
    if values.shape != (n + 1,):
        raise HypothesisError(f"alpha має довжину {values.shape}, очікується {n + 1}")
    if values[0] != 1:
        raise HypothesisError(f"Потрібно alpha_0 = 1, отримано {values[0]}")
    if any(not 0 <= v <= 1 for v in values):
        raise HypothesisError("Усі alpha_k мають лежати в [0, 1]")
    return values


@dataclass
class CliqueClosedForm:
    """
    Замкнена форма M для P = C за формулою Шермана-Моррісона

    Attributes:
        w: Сума 1/(alpha_k - n - 1)
        D: Діагональ матриці A - (n+1)I
        M_closed: (1/(1+w)) J D^{-1} - n D^{-1} + (n/(1+w)) D^{-1} J D^{-1}
        total_mass: w/(1+w)
    """
    n: int
    w: Fraction
    D: np.ndarray
    M_closed: np.ndarray
    total_mass: Fraction


def clique_closed_form(alpha, n: int) -> CliqueClosedForm:
    """
    Обчислює M = [I - (I - A)C]^{-1} через замкнену формулу

    Args:
        alpha: Вектор опору довжини n+1 з alpha_0 = 1
        n: Кількість вершин

    Returns:
        CliqueClosedForm з точними дробами

    Raises:
        HypothesisError: alpha_0 != 1 або alpha поза [0, 1]
    """
    a = _clique_alpha(alpha, n)
    diagonal = np.array([a_k - (n + 1) for a_k in a], dtype=object)
    inv = np.array([1 / d_k for d_k in diagonal], dtype=object)
    w = sum(inv)
    size = n + 1

    M = EXACT.zeros((size, size))
    for i in range(size):
        for j in range(size):
            value = inv[j] / (1 + w) + n * inv[i] * inv[j] / (1 + w)
            if i == j:
                value -= n * inv[i]
            M[i, j] = value

    return CliqueClosedForm(n=n, w=w, D=diagonal, M_closed=M, total_mass=w / (1 + w))


def clique_yij(alpha, n: int, i: int, j: int) -> Fraction:
    """
    y_ij = (1 - alpha_j) / ((alpha_i - n - 1)(alpha_j - n - 1)(1 + w)) для P = C

    Args:
        alpha: Вектор опору з alpha_0 = 1
        n: Кількість вершин
        i: Вершина з V
        j: Вершина з V, j != i

    Returns:
        Точне значення y_ij (<= 0)
    """
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise HypothesisError(f"Потрібні різні вершини з 1..{n}, отримано ({i}, {j})")
    a = _clique_alpha(alpha, n)
    w = sum(1 / (a_k - n - 1) for a_k in a)
    return (1 - a[j]) / ((a[i] - n - 1) * (a[j] - n - 1) * (1 + w))


def clique_mass_maximum(n: int) -> int:
    """
    Маса 1ᵀM1 кліки при alpha_0 = 1, alpha_V = 0: n^2 + n + 1

    Це гіпотетично точна верхня межа маси (для n = 2 дорівнює 7 > n).
    """
    return n * n + n + 1


@dataclass
class PerturbationCertificate:
    """
    Перевірка двосторонньої оцінки L X^{-1} <= X~^{-1} <= U X^{-1}

    Attributes:
        epsilon: Відносне збурення
        exponent: Показник степеня (розмірність матриці)
        lower_factor: (1 - eps)^m / (1 + eps)^(m-1)
        upper_factor: (1 + eps)^m / (1 - eps)^(m-1)
        hypothesis_holds: Чи виконані умови (структура I - B та відносні збурення)
        entries_total: Кількість перевірених елементів
        entries_passed: Кількість елементів, для яких оцінка виконана
    """
    epsilon: Scalar
    exponent: int
    lower_factor: Scalar
    upper_factor: Scalar
    hypothesis_holds: bool
    entries_total: int
    entries_passed: int
    hypothesis_notes: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.entries_passed == self.entries_total

    @property
    def applicable(self) -> bool:
        return self.hypothesis_holds


def sandwich_factors(epsilon, exponent: int) -> Tuple[Scalar, Scalar]:
    """Множники (1-e)^m/(1+e)^(m-1) та (1+e)^m/(1-e)^(m-1)"""
    lower = (1 - epsilon) ** exponent / (1 + epsilon) ** (exponent - 1)
    upper = (1 + epsilon) ** exponent / (1 - epsilon) ** (exponent - 1)
    return lower, upper


def perturbation_sandwich(X0, X1, epsilon, backend: Backend = EXACT) -> PerturbationCertificate:
    """
    Поелементна оцінка оберненої збуреної матриці

    Умови: обидві матриці мають вигляд I - B з B >= 0 і рядковими сумами B <= 1,
    |X0_ij - X1_ij| <= eps |X0_ij| поза діагоналлю та |X0 1 - X1 1| <= eps |X0 1|.
    Порушення умов не перериває перевірку: сертифікат позначається як
    незастосовний, а оцінка все одно вимірюється.

    Args:
        X0: Базова матриця
        X1: Збурена матриця
        epsilon: Відносне збурення, 0 <= eps < 1
        backend: Арифметика (exact дає точне порівняння)

    Returns:
        PerturbationCertificate
    """
    backend = get_backend(backend)
    X0 = backend.array(X0)
    X1 = backend.array(X1)
    epsilon = backend.scalar(epsilon)
    if X0.shape != X1.shape or X0.ndim != 2 or X0.shape[0] != X0.shape[1]:
        raise ValueError(f"Несумісні матриці: {X0.shape} та {X1.shape}")
    if not 0 <= epsilon < 1:
        raise HypothesisError(f"epsilon має лежати в [0, 1), отримано {epsilon}")

    m = X0.shape[0]
    notes = []
    for label, X in (("X0", X0), ("X1", X1)):
        B = backend.eye(m) - X
        if any(v < 0 for v in B.flat):
            notes.append(f"{label}: B має від'ємні елементи")
        if any(row_sum > 1 for row_sum in B.sum(axis=1)):
            notes.append(f"{label}: рядкова сума B перевищує 1")

    for i in range(m):
        for j in range(m):
            if i != j and not backend.leq(abs(X0[i, j] - X1[i, j]), epsilon * abs(X0[i, j])):
                notes.append(f"збурення елемента ({i}, {j}) перевищує eps")
    rows0, rows1 = X0.sum(axis=1), X1.sum(axis=1)
    for i in range(m):
        if not backend.leq(abs(rows0[i] - rows1[i]), epsilon * abs(rows0[i])):
            notes.append(f"збурення рядкової суми {i} перевищує eps")

    lower, upper = sandwich_factors(epsilon, m)
    M0 = inverse(X0, backend)
    M1 = inverse(X1, backend)
    passed = sum(
        1 for base, value in zip(M0.flat, M1.flat)
        if backend.leq(lower * base, value) and backend.leq(value, upper * base)
    )
    if notes:
        logger.info("Умови оцінки збурення порушені: %s", "; ".join(notes[:3]))
    return PerturbationCertificate(
        epsilon=epsilon, exponent=m, lower_factor=lower, upper_factor=upper,
        hypothesis_holds=not notes, entries_total=m * m, entries_passed=passed,
        hypothesis_notes=notes,
    )


def _system(P: InteractionMatrix, alpha: np.ndarray, backend: Backend) -> np.ndarray:
    entries = backend.array(P.entries)
    return backend.eye(P.n_agents) - (1 - alpha)[:, None] * entries


@dataclass
class MassBound:
    """Виміряна маса 1ᵀM^(delta)1 і сертифікована межа"""
    measured: Fraction
    base_mass: Fraction
    epsilon: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.measured <= self.bound


def mass_bound_delta(n: int, edges: Sequence[Tuple[int, int]], d: int, alpha, delta) -> MassBound:
    """
    Межа 1ᵀM^(delta)1 <= 1ᵀM^(0)1 (1 + eps)^n / (1 - eps)^(n-1), eps = delta n / d

    Базова маса для P = C вимірюється точно. Рядок 0 системної матриці
    при alpha_0 = 1 дорівнює e_0ᵀ, тому достатньо показника n = |V|.

    Args:
        n: Кількість вершин
        edges: Ребра d-регулярного графа
        d: Степінь
        alpha: Вектор опору з alpha_0 = 1
        delta: Вага R у суміші, 0 <= delta < d/n

    Returns:
        MassBound з точними дробами
    """
    delta = parse_scalar(delta)
    if not 0 <= delta < Fraction(d, n):
        raise HypothesisError(f"Потрібно 0 <= delta < d/n = {Fraction(d, n)}, отримано {delta}")
    a = _clique_alpha(alpha, n)
    clique = build_clique_matrix(n)
    mixed = mix_matrices(clique, build_regular_matrix(edges, n, d), delta)

    base_mass = inverse(_system(clique, a, EXACT)).sum()
    measured = inverse(_system(mixed, a, EXACT)).sum()
    epsilon = delta * n / d
    _, upper = sandwich_factors(epsilon, n)
    return MassBound(measured=measured, base_mass=base_mass, epsilon=epsilon, bound=base_mass * upper)


class DeltaVariant(Enum):
    """Варіант формули для delta"""
    PAPER = "paper"
    CORRECTED = "corrected"


def check_regular_feasible(n: int, d: int) -> None:
    """Існування простого d-регулярного графа на n вершинах: n >= 2, 1 <= d < n, nd парне"""
    if n < 2 or d < 1 or d >= n or (n * d) % 2:
        raise HypothesisError(f"d-регулярний граф неможливий для n={n}, d={d}")


def delta_formula(n: int, d: int, variant: DeltaVariant = DeltaVariant.CORRECTED) -> Fraction:
    """
    delta = d^3 (2d - 1)^(3n - 3) / ((n + 1)^e (2d + 1)^(3n))

    Показник e = 6 для варіанта PAPER і e = 9 для CORRECTED (маса кліки
    обмежена (n+1)^2, а не n).

    Args:
        n: Кількість вершин
        d: Степінь
        variant: Варіант формули

    Returns:
        Точний дріб
    """
    check_regular_feasible(n, d)
    variant = DeltaVariant(variant)
    exponent = 6 if variant is DeltaVariant.PAPER else 9
    return Fraction(d ** 3 * (2 * d - 1) ** (3 * n - 3), (n + 1) ** exponent * (2 * d + 1) ** (3 * n))


@dataclass
class DeltaSearchResult:
    """
    Результат емпіричного пошуку delta*

    Attributes:
        delta_star: Найбільше знайдене delta, для якого всі y_ij < 0
        certified: Чи підтверджено умову в delta_star точною арифметикою
        no_sign_change: Умова не змінюється на проміжку (delta_star = межа)
        search_range: Проміжок пошуку
        paper: delta за формулою PAPER
        corrected: delta за формулою CORRECTED
        probes: Кількість пробних векторів
        history: Послідовність дужок (lo, hi) бісекції
    """
    delta_star: Fraction
    certified: bool
    no_sign_change: bool
    search_range: Tuple[Fraction, Fraction]
    paper: Fraction
    corrected: Fraction
    probes: int
    history: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def ratio_to_corrected(self) -> float:
        return float(self.delta_star / self.corrected)


def default_probes(n: int, samples: int = SETTINGS.probe_samples, seed: int = 0) -> List[np.ndarray]:
    """
    {alpha^} та samples випадкових вершин {0,1}^(n+1) з alpha_0 = 1

    Args:
        n: Кількість вершин
        samples: Кількість випадкових вершин
        seed: Зерно генератора

    Returns:
        Список точних векторів
    """
    rng = np.random.default_rng(seed)
    start = EXACT.zeros(n + 1)
    start[0] = Fraction(1)
    probes = [start]
    for _ in range(samples):
        vertex = EXACT.array([1] + [int(b) for b in rng.integers(0, 2, size=n)])
        probes.append(vertex)
    return probes


def y_negative_at_zero(P: np.ndarray, probes: Sequence[np.ndarray], n: int, backend: Backend) -> bool:
    """
    Чи y_ij < 0 для всіх проб, усіх пар i != j з V при alpha_j := 0

    Args:
        P: Матриця взаємодії (масив бекенду)
        probes: Вектори опору з alpha_0 = 1
        n: Кількість вершин
        backend: Арифметика

    Returns:
        True, якщо умова виконана всюди
    """
    size = n + 1
    for probe in probes:
        for j in range(1, size):
            alpha = backend.array(probe)
            alpha[j] = backend.scalar(0)
            M = inverse(backend.eye(size) - (1 - alpha)[:, None] * P, backend)
            c = M.sum(axis=0)
            for i in range(1, size):
                if i != j and not c[i] * (M[j, j] - 1) - c[j] * M[j, i] < 0:
                    return False
    return True


def empirical_delta_star(n: int, edges: Sequence[Tuple[int, int]], d: int,
                         probes: Optional[Sequence[np.ndarray]] = None,
                         search_range: Optional[Tuple[Scalar, Scalar]] = None,
                         iterations: int = SETTINGS.delta_search_iterations,
                         samples: int = SETTINGS.probe_samples, seed: int = 0) -> DeltaSearchResult:
    """
    Бісекція для найбільшого delta, за якого y_ij^(delta) < 0 при alpha_j = 0

    Монотонність умови за delta лише припускається в межах проміжку;
    результат є емпіричним. Пошук іде у float, знайдене значення
    перевіряється точно.

    Args:
        n: Кількість вершин
        edges: Ребра d-регулярного графа
        d: Степінь
        probes: Пробні вектори (за замовчуванням default_probes)
        search_range: Проміжок пошуку (за замовчуванням [0, d/n])
        iterations: Кількість кроків бісекції
        samples: Кількість випадкових проб
        seed: Зерно генератора проб

    Returns:
        DeltaSearchResult
    """
    clique = build_clique_matrix(n)
    regular = build_regular_matrix(edges, n, d)
    if probes is None:
        probes = default_probes(n, samples, seed)
    low, high = search_range if search_range is not None else (Fraction(0), Fraction(d, n))
    low, high = parse_scalar(low), parse_scalar(high)

    def ok(delta: Scalar, backend: Backend) -> bool:
        P = backend.array(mix_matrices(clique, regular, delta).entries)
        return y_negative_at_zero(P, probes, n, backend)

    result = DeltaSearchResult(
        delta_star=low, certified=False, no_sign_change=False, search_range=(low, high),
        paper=delta_formula(n, d, DeltaVariant.PAPER), corrected=delta_formula(n, d, DeltaVariant.CORRECTED),
        probes=len(probes),
    )

    if ok(high, FLOAT):
        logger.info("Умова виконується на всьому проміжку до %s", high)
        result.delta_star, result.no_sign_change = high, True
    elif not ok(low, FLOAT):
        logger.warning("Умова не виконується вже на нижній межі %s", low)
        result.no_sign_change = True
    else:
        lo, hi = float(low), float(high)
        for _ in range(iterations):
            mid = (lo + hi) / 2
            if ok(mid, FLOAT):
                lo = mid
            else:
                hi = mid
            result.history.append((lo, hi))
        result.delta_star = Fraction(lo)

    result.certified = ok(result.delta_star, EXACT)
    logger.info("delta* = %.6g, відношення до виправленої формули %.3g",
                float(result.delta_star), result.ratio_to_corrected)
    return result
