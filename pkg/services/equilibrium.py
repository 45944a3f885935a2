# -*- coding: utf-8 -*-
"""
Рівноважні думки моделі: ітерація динаміки, прямий розв'язок, матриця M та цільова функція
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import SETTINGS
from models.errors import InstanceError, SingularSystemError
from models.instance import OpinionInstance, ResistanceVector
from models.scalar import Backend, EXACT, FLOAT, Scalar, get_backend
from services.linalg import inverse, max_abs, solve

logger = logging.getLogger(__name__)


@dataclass
class EquilibriumReport:
    """
    Результат обчислення рівноваги

    Attributes:
        z: Рівноважні думки
        f_value: 1ᵀz
        residual: max |Xz - As|
        backend: Назва бекенду, у якому отримано z
        M: Повна обернена матриця (якщо запитана)
        iterations: Кількість кроків динаміки (0 для прямого розв'язку)
        converged: Чи досягнуто допуску за max_steps
        discrepancy: max |z_iter - z_direct| для ітераційного шляху
    """
    z: np.ndarray
    f_value: Scalar
    residual: Scalar
    backend: str
    M: Optional[np.ndarray] = None
    iterations: int = 0
    converged: bool = True
    discrepancy: Optional[float] = None

    def in_unit_range(self, tol: float = SETTINGS.z_range_tol) -> bool:
        """Чи лежить z у [0, 1]^N (точно або з допуском tol у float)"""
        if self.backend == EXACT.name:
            return all(0 <= v <= 1 for v in self.z)
        return bool(np.all(self.z >= -tol) and np.all(self.z <= 1 + tol))


def alpha_array(instance: OpinionInstance, alpha, backend: Backend) -> np.ndarray:
    if alpha is None:
        alpha = instance.alpha_init
    if isinstance(alpha, ResistanceVector):
        alpha = alpha.alpha
    values = backend.array(alpha)
    if values.shape != (instance.n_agents,):
        raise InstanceError(f"alpha має довжину {values.shape}, очікується {instance.n_agents}")
    return values


def system_matrix(instance: OpinionInstance, alpha=None, backend: Backend = EXACT) -> np.ndarray:
    """
    X = I - (I - A)P, де A = Diag(alpha)

    Рядок i матриці X має суму alpha_i.

    Args:
        instance: Екземпляр задачі
        alpha: Вектор опору (за замовчуванням alpha_init)
        backend: Арифметика

    Returns:
        Матриця X
    """
    backend = get_backend(backend)
    a = alpha_array(instance, alpha, backend)
    P = backend.array(instance.interaction.entries)
    return backend.eye(instance.n_agents) - (1 - a)[:, None] * P


def solve_equilibrium(instance: OpinionInstance, alpha=None, backend: Backend = EXACT,
                      with_inverse: bool = False) -> EquilibriumReport:
    """
    Розв'язує Xz = As методом Гаусса

    Args:
        instance: Екземпляр задачі
        alpha: Вектор опору (за замовчуванням alpha_init)
        backend: Арифметика ("exact" дає нульовий залишок)
        with_inverse: Обчислити також M = X^{-1}

    Returns:
        EquilibriumReport з z, f та залишком

    Raises:
        SingularSystemError: Якщо X вироджена (наприклад, усі alpha = 0)
    """
    backend = get_backend(backend)
    a = alpha_array(instance, alpha, backend)
    X = system_matrix(instance, a, backend)
    rhs = a * backend.array(instance.innate)

    M = None
    if with_inverse:
        M = inverse(X, backend)
        z = M.dot(rhs)
    else:
        z = solve(X, rhs, backend)

    residual = max_abs(X.dot(z) - rhs)
    f_value = z.sum() if backend.exact else float(z.sum())
    return EquilibriumReport(z=z, f_value=f_value, residual=residual, backend=backend.name, M=M)


def compute_M(instance: OpinionInstance, alpha=None, backend: Backend = EXACT) -> np.ndarray:
    """
    M = [I - (I - A)P]^{-1}

    Args:
        instance: Екземпляр задачі
        alpha: Вектор опору
        backend: Арифметика

    Returns:
        Невід'ємна матриця M з M_ii >= 1
    """
    backend = get_backend(backend)
    return inverse(system_matrix(instance, alpha, backend), backend)


def objective(instance: OpinionInstance, alpha=None, backend: Backend = EXACT) -> Scalar:
    """f(alpha) = 1ᵀ[I - (I - A)P]^{-1}As"""
    return solve_equilibrium(instance, alpha, backend).f_value


def iterate_dynamics(instance: OpinionInstance, alpha=None, z0=None,
                     max_steps: int = SETTINGS.max_steps, tol: float = SETTINGS.iteration_tol,
                     backend: Backend = EXACT) -> EquilibriumReport:
    """
    Ітерує z <- As + (I - A)Pz до ||z_new - z||_inf <= tol

    Ітерація завжди виконується у float. У точному режимі результат
    сертифікується прямим точним розв'язком, а відхилення ітерації від
    нього записується у discrepancy.

    Args:
        instance: Екземпляр задачі
        alpha: Вектор опору (за замовчуванням alpha_init)
        z0: Початковий вектор (за замовчуванням нулі)
        max_steps: Максимальна кількість кроків
        tol: Допуск зупинки
        backend: Арифметика сертифікації

    Returns:
        EquilibriumReport; при незбіжності converged=False і z = останній ітерат.
        iterations рахує кроки оновлення без завершального кроку, зміна на якому
        не перевищила tol: для alpha з одиниць і z0 = 0 це 1 крок
    """
    backend = get_backend(backend)
    a = alpha_array(instance, alpha, FLOAT)
    if not np.any(a > 0):
        raise SingularSystemError("Жоден alpha_i не додатний: динаміка не має єдиної рівноваги")

    P = FLOAT.array(instance.interaction.entries)
    s = FLOAT.array(instance.innate)
    anchor = a * s
    weighted = (1 - a)[:, None] * P
    z = np.zeros(instance.n_agents) if z0 is None else FLOAT.array(z0)

    converged = False
    steps = 0
    while steps < max_steps:
        steps += 1
        updated = anchor + weighted @ z
        change = np.max(np.abs(updated - z))
        z = updated
        if change <= tol:
            converged = True
            break

    if not converged:
        logger.warning("Динаміка не збіглася за %d кроків (остання зміна %.3e)", max_steps, change)
        X = system_matrix(instance, a, FLOAT)
        return EquilibriumReport(
            z=z, f_value=float(z.sum()), residual=float(np.max(np.abs(X @ z - anchor))),
            backend=FLOAT.name, iterations=steps, converged=False,
        )

    # останній крок лише підтверджує нерухому точку
    steps -= 1
    logger.debug("Динаміка збіглася за %d кроків", steps)
    direct = solve_equilibrium(instance, alpha, backend)
    discrepancy = float(np.max(np.abs(z - direct.z.astype(float))))
    if backend.exact:
        direct.iterations = steps
        direct.discrepancy = discrepancy
        return direct

    X = system_matrix(instance, a, FLOAT)
    return EquilibriumReport(
        z=z, f_value=float(z.sum()), residual=float(np.max(np.abs(X @ z - anchor))),
        backend=FLOAT.name, iterations=steps, converged=True, discrepancy=discrepancy,
    )


def objective_batch(P, s, alphas) -> np.ndarray:
    """
    Векторизоване обчислення f для пакета векторів alpha (float)

    Args:
        P: Матриця взаємодії n x n
        s: Вроджені думки
        alphas: Масив форми (batch, n)

    Returns:
        Вектор f довжини batch
    """
    P = np.asarray(P, dtype=float)
    s = np.asarray(s, dtype=float)
    alphas = np.atleast_2d(np.asarray(alphas, dtype=float))
    n = P.shape[0]
    X = np.eye(n)[None, :, :] - (1.0 - alphas)[:, :, None] * P[None, :, :]
    rhs = (alphas * s[None, :])[:, :, None]
    return np.linalg.solve(X, rhs)[:, :, 0].sum(axis=1)


def column_sums(M: np.ndarray) -> np.ndarray:
    """c = 1ᵀM"""
    return M.sum(axis=0)


def total_mass(M: np.ndarray) -> Scalar:
    """1ᵀM1"""
    return M.sum()


@dataclass
class PMIdentityReport:
    """Яка форма тотожності для (PM)_kj справджується"""
    rows_checked: int
    diagonal_holds: bool
    off_diagonal_subtract_zero: bool
    off_diagonal_subtract_one: bool


def pm_identity_check(instance: OpinionInstance, alpha=None) -> PMIdentityReport:
    """
    Точно перевіряє тотожності для PM у рядках з alpha_k != 1

    Діагональ: (PM)_kk = (M_kk - 1)/(1 - alpha_k). Поза діагоналлю
    порівнюються обидві форми: (M_kj - 0)/(1 - alpha_k) та (M_kj - 1)/(1 - alpha_k).

    Args:
        instance: Екземпляр задачі
        alpha: Вектор опору

    Returns:
        PMIdentityReport
    """
    a = alpha_array(instance, alpha, EXACT)
    M = compute_M(instance, a, EXACT)
    PM = EXACT.array(instance.interaction.entries).dot(M)
    n = instance.n_agents

    rows = [k for k in range(n) if a[k] != 1]
    diagonal = all(PM[k, k] == (M[k, k] - 1) / (1 - a[k]) for k in rows)
    zero_form = all(PM[k, j] == M[k, j] / (1 - a[k]) for k in rows for j in range(n) if j != k)
    one_form = all(PM[k, j] == (M[k, j] - 1) / (1 - a[k]) for k in rows for j in range(n) if j != k)
    return PMIdentityReport(
        rows_checked=len(rows),
        diagonal_holds=diagonal,
        off_diagonal_subtract_zero=zero_form,
        off_diagonal_subtract_one=one_form,
    )
