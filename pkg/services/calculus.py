# -*- coding: utf-8 -*-
"""
Похідні цільової функції за alpha та P, величини y_ij і умова на напрямлену другу похідну
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from config import SETTINGS
from models.errors import BoundaryError
from models.instance import OpinionInstance
from models.scalar import Backend, EXACT, Scalar, get_backend
from services.equilibrium import alpha_array, column_sums, compute_M, total_mass
from services.finite_difference import partial_difference

logger = logging.getLogger(__name__)


def y_matrix(M: np.ndarray) -> np.ndarray:
    """
    Усі y_ij = 1ᵀMe_i (M_jj - 1) - 1ᵀMe_j M_ji з однієї матриці M

    Діагональ не має змісту і заповнюється нулями.

    Args:
        M: Обернена матриця системи

    Returns:
        Матриця Y того ж типу, що й M
    """
    c = column_sums(M)
    Y = np.outer(c, np.diag(M) - 1) - M.T * c[None, :]
    for i in range(M.shape[0]):
        Y[i, i] = 0 * Y[i, i]
    return Y


@dataclass(frozen=True)
class HessianPair:
    """Чотири другі похідні для пари (i, j)"""
    d_ii: Scalar
    d_jj: Scalar
    d_ij: Scalar
    d_ji: Scalar

    def quadratic_form(self) -> Scalar:
        """(e_i - e_j)ᵀ H (e_i - e_j)"""
        return self.d_ii + self.d_jj - self.d_ij - self.d_ji


@dataclass(frozen=True)
class DirectionalReport:
    """
    Напрямлена друга похідна з перевіркою компактної форми

    Attributes:
        full: Повна квадратична форма з hessian_pair
        tie: Чи виконано (e_i - e_j)ᵀ∇f = 0 (точно або з допуском)
        compact: Компактна форма через y_ij (лише при tie)
        agrees: Чи збігаються full і compact (None без tie)
    """
    full: Scalar
    tie: bool
    compact: Optional[Scalar] = None
    agrees: Optional[bool] = None


class SensitivityReport:
    """
    Чутливість f у точці alpha, побудована з однієї спільної матриці M

    Координати з alpha_i = 1 (у float: alpha_i >= 1 - eta) позначені як
    фіксовані; формули похідних для них не визначені.
    """

    def __init__(self, instance: OpinionInstance, alpha=None, backend: Backend = EXACT,
                 eta: float = SETTINGS.derivative_eta, tie_tol: float = SETTINGS.tie_tol):
        """
        Args:
            instance: Екземпляр задачі
            alpha: Точка (за замовчуванням alpha_init)
            backend: Арифметика
            eta: Відступ від межі alpha_i = 1 для float
            tie_tol: Допуск рівності компонент градієнта для float
        """
        self.instance = instance
        self.backend = get_backend(backend)
        self.tie_tol = tie_tol
        self.alpha = alpha_array(instance, alpha, self.backend)
        self.innate = self.backend.array(instance.innate)
        self.P = self.backend.array(instance.interaction.entries)
        self.M = compute_M(instance, self.alpha, self.backend)
        self.z = self.M.dot(self.alpha * self.innate)
        self.c = column_sums(self.M)
        self.PM = self.P.dot(self.M)
        self.y = y_matrix(self.M)

        if self.backend.exact:
            self.fixed = tuple(i for i, a in enumerate(self.alpha) if a == 1)
        else:
            self.fixed = tuple(i for i, a in enumerate(self.alpha) if a >= 1 - eta)

        self.grad: Tuple[Optional[Scalar], ...] = tuple(
            None if i in self.fixed
            else self.c[i] * (self.innate[i] - self.z[i]) / (1 - self.alpha[i])
            for i in range(instance.n_agents)
        )

    def _require_free(self, *indices: int) -> None:
        for i in indices:
            if i in self.fixed:
                raise BoundaryError(f"Агент {i} має alpha_i = 1: похідна за цією формулою не визначена")

    @property
    def mass(self) -> Scalar:
        return total_mass(self.M)

    def dM_dalpha(self, i: int) -> np.ndarray:
        """dM/dalpha_i = -M e_i e_iᵀ P M (матриця рангу не більше 1)"""
        self._require_free(i)
        return np.outer(-self.M[:, i], self.PM[i, :])

    def hessian_pair(self, i: int, j: int) -> HessianPair:
        """
        Другі похідні f за (alpha_i, alpha_j)

        d_ij береться із замкненої формули через елементи M, а d_ji
        обчислюється окремо через dM/dalpha_i, тож їхня рівність є
        справжньою перевіркою симетрії.

        Args:
            i: Перший агент
            j: Другий агент (j != i)

        Returns:
            HessianPair
        """
        if i == j:
            raise ValueError("hessian_pair потребує різних агентів i != j")
        self._require_free(i, j)
        M, c, s, z, a = self.M, self.c, self.innate, self.z, self.alpha

        def pure(k: int) -> Scalar:
            return -2 * (s[k] - z[k]) / (1 - a[k]) ** 2 * c[k] * (M[k, k] - 1)

        d_ij = -(c[j] * M[j, i] * (s[i] - z[i]) + c[i] * M[i, j] * (s[j] - z[j])) / ((1 - a[i]) * (1 - a[j]))

        # d/dalpha_i градієнта g_j = c_j (s_j - (Pz)_j)
        dM = self.dM_dalpha(i)
        dc = column_sums(dM)
        dz = dM.dot(a * s) + M[:, i] * s[i]
        Pz_j = self.P[j].dot(z)
        d_ji = dc[j] * (s[j] - Pz_j) - c[j] * self.P[j].dot(dz)

        return HessianPair(d_ii=pure(i), d_jj=pure(j), d_ij=d_ij, d_ji=d_ji)

    def is_tie(self, i: int, j: int) -> bool:
        """(e_i - e_j)ᵀ∇f = 0: точно або з допуском tie_tol"""
        self._require_free(i, j)
        diff = self.grad[i] - self.grad[j]
        return diff == 0 if self.backend.exact else abs(diff) <= self.tie_tol

    def compact_form(self, i: int, j: int) -> Scalar:
        """
        2/((1 - alpha_i)(1 - alpha_j)) ((z_i - s_i) y_ij + (z_j - s_j) y_ji)

        При s_i = s_j = 0 збігається з формою z_i y_ij + z_j y_ji.
        Дорівнює напрямленій другій похідній лише за умови рівності градієнтів.
        """
        a, s, z, y = self.alpha, self.innate, self.z, self.y
        return 2 * ((z[i] - s[i]) * y[i, j] + (z[j] - s[j]) * y[j, i]) / ((1 - a[i]) * (1 - a[j]))

    def dir2(self, i: int, j: int, rel_tol: float = SETTINGS.compact_rel_tol) -> DirectionalReport:
        """
        (e_i - e_j)ᵀ∇²f(e_i - e_j) з перевіркою компактної форми

        Args:
            i: Перший агент
            j: Другий агент
            rel_tol: Відносний допуск узгодження у float

        Returns:
            DirectionalReport
        """
        full = self.hessian_pair(i, j).quadratic_form()
        if not self.is_tie(i, j):
            return DirectionalReport(full=full, tie=False)
        compact = self.compact_form(i, j)
        if self.backend.exact:
            agrees = full == compact
        else:
            agrees = abs(full - compact) <= rel_tol * max(1.0, abs(full))
        if not agrees:
            logger.warning("Компактна форма не збіглася: full=%s compact=%s (i=%d, j=%d)", full, compact, i, j)
        return DirectionalReport(full=full, tie=True, compact=compact, agrees=agrees)

    def dM_dP(self, k: int, l: int) -> np.ndarray:
        """dM/dP_kl = (1 - alpha_k) M e_k e_lᵀ M"""
        return (1 - self.alpha[k]) * np.outer(self.M[:, k], self.M[l, :])

    def dy_dP(self, i: int, j: int) -> np.ndarray:
        """
        Матриця dy_ij/dP_kl за всіма (k, l)

        Має вигляд суми двох зовнішніх добутків:
        (1 - alpha_k)[c_k b_l + M_jk q_l], де
        b_l = M_li (M_jj - 1) - M_lj M_ji, q_l = c_i M_lj - c_j M_li.
        """
        M, c = self.M, self.c
        weight = 1 - self.alpha
        b = M[:, i] * (M[j, j] - 1) - M[:, j] * M[j, i]
        q = c[i] * M[:, j] - c[j] * M[:, i]
        return np.outer(weight * c, b) + np.outer(weight * M[j, :], q)


def sensitivity(instance: OpinionInstance, alpha=None, backend: Backend = EXACT) -> SensitivityReport:
    """Будує SensitivityReport у точці alpha"""
    return SensitivityReport(instance, alpha, backend)


def gradient(instance: OpinionInstance, alpha=None, backend: Backend = EXACT,
             eta: float = SETTINGS.derivative_eta) -> Tuple[Optional[Scalar], ...]:
    """
    df/dalpha_i = (s_i - z_i)/(1 - alpha_i) 1ᵀMe_i

    Args:
        instance: Екземпляр задачі
        alpha: Точка
        backend: Арифметика
        eta: Відступ від межі alpha_i = 1 для float

    Returns:
        Кортеж значень; None для фіксованих координат (alpha_i = 1)
    """
    return SensitivityReport(instance, alpha, backend, eta=eta).grad


def dM_dalpha(instance: OpinionInstance, alpha, i: int, backend: Backend = EXACT) -> np.ndarray:
    """dM/dalpha_i; BoundaryError при alpha_i = 1"""
    return SensitivityReport(instance, alpha, backend).dM_dalpha(i)


def hessian_pair(instance: OpinionInstance, alpha, i: int, j: int, backend: Backend = EXACT) -> HessianPair:
    return SensitivityReport(instance, alpha, backend).hessian_pair(i, j)


def y_quantity(instance: OpinionInstance, alpha, i: int, j: int, backend: Backend = EXACT) -> Scalar:
    """
    y_ij = 1ᵀMe_i (M_jj - 1) - 1ᵀMe_j M_ji

    Args:
        instance: Екземпляр задачі
        alpha: Точка
        i: Перший агент
        j: Другий агент (j != i)
        backend: Арифметика

    Returns:
        Значення y_ij
    """
    if i == j:
        raise ValueError("y_ij визначено лише для i != j")
    backend = get_backend(backend)
    M = compute_M(instance, alpha, backend)
    c = column_sums(M)
    return c[i] * (M[j, j] - 1) - c[j] * M[j, i]


def directional_second_derivative(instance: OpinionInstance, alpha, i: int, j: int,
                                  backend: Backend = EXACT) -> DirectionalReport:
    return SensitivityReport(instance, alpha, backend).dir2(i, j)


def dM_dP(instance: OpinionInstance, alpha, k: int, l: int, backend: Backend = EXACT) -> np.ndarray:
    """Похідна M за елементом P_kl (без перенормування рядка)"""
    return SensitivityReport(instance, alpha, backend).dM_dP(k, l)


@dataclass(frozen=True)
class BoundCheck:
    """Виміряне значення проти межі"""
    value: Scalar
    bound: Scalar
    holds: bool


def y_sensitivity_sum(instance: OpinionInstance, alpha, i: int, j: int, backend: Backend = EXACT) -> BoundCheck:
    """
    Сума |dy_ij/dP_kl| за всіма (k, l) проти межі 4(1ᵀM1)^3

    Args:
        instance: Екземпляр задачі
        alpha: Точка
        i: Перший агент
        j: Другий агент
        backend: Арифметика (exact дає точне порівняння)

    Returns:
        BoundCheck
    """
    report = SensitivityReport(instance, alpha, backend)
    total = sum(abs(v) for v in report.dy_dP(i, j).flat)
    bound = 4 * report.mass ** 3
    return BoundCheck(value=total, bound=bound, holds=report.backend.leq(total, bound))


@dataclass(frozen=True)
class DerivativeCheck:
    """Порівняння аналітичної похідної зі скінченною різницею"""
    analytic: float
    numeric: float
    residual: float
    passed: bool


def y_derivative_check(instance: OpinionInstance, alpha, i: int, j: int,
                       h: float = SETTINGS.fd_step, rel_tol: float = SETTINGS.fd_rel_tol_y) -> DerivativeCheck:
    """
    Перевіряє dy_ij/dalpha_j = -(M_jj/(1 - alpha_j)) y_ij скінченною різницею

    Біля меж [0, 1] використовується одностороння різниця.

    Args:
        instance: Екземпляр задачі
        alpha: Точка з alpha_j < 1
        i: Агент i
        j: Агент j, за яким диференціюємо
        h: Крок
        rel_tol: Відносний допуск (з підлогою 1)

    Returns:
        DerivativeCheck з |numeric - analytic|
    """
    base = alpha_array(instance, alpha, EXACT)
    if base[j] == 1:
        raise BoundaryError(f"Агент {j} має alpha_j = 1: права частина не визначена")
    M = compute_M(instance, base, EXACT)
    c = column_sums(M)
    y_ij = c[i] * (M[j, j] - 1) - c[j] * M[j, i]
    analytic = float(-(M[j, j] / (1 - base[j])) * y_ij)

    def y_of(point: np.ndarray) -> float:
        return float(y_quantity(instance, point, i, j, backend="float"))

    numeric = partial_difference(y_of, base.astype(float), j, h)
    residual = abs(numeric - analytic)
    return DerivativeCheck(
        analytic=analytic, numeric=numeric, residual=residual,
        passed=residual <= rel_tol * max(1.0, abs(analytic)),
    )


DEFAULT_SWEEP = tuple(Fraction(m, 8) for m in range(8))


def y_sweep(instance: OpinionInstance, alpha, i: int, j: int, grid: Sequence = DEFAULT_SWEEP,
            backend: Backend = EXACT) -> Tuple[Scalar, ...]:
    """
    Значення y_ij при alpha_j, що пробігає сітку (решта координат фіксовані)

    Args:
        instance: Екземпляр задачі
        alpha: Базова точка
        i: Агент i
        j: Агент j
        grid: Значення alpha_j
        backend: Арифметика

    Returns:
        Кортеж y_ij для кожної точки сітки
    """
    backend = get_backend(backend)
    point = alpha_array(instance, alpha, backend)
    values = []
    for value in grid:
        point[j] = backend.scalar(value)
        values.append(y_quantity(instance, point, i, j, backend))
    return tuple(values)


def sweep_is_monotone(values: Sequence) -> bool:
    """
    Знак сталий і |y| монотонний, або всі значення нульові

    Args:
        values: Послідовність значень y_ij по сітці

    Returns:
        True, якщо послідовність узгоджена з монотонністю
    """
    if all(v == 0 for v in values):
        return True
    if not (all(v < 0 for v in values) or all(v > 0 for v in values)):
        return False
    magnitudes = [abs(v) for v in values]
    pairs = list(zip(magnitudes, magnitudes[1:]))
    return all(a <= b for a, b in pairs) or all(a >= b for a, b in pairs)
