# -*- coding: utf-8 -*-
"""
Числові параметри за замовчуванням
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Settings:
    """
    Значення за замовчуванням для всіх обчислень.

    Кожна публічна функція приймає відповідний параметр як keyword-аргумент,
    тож ці значення можна перевизначити для окремого виклику.
    """
    # Ітерації динаміки та перевірка рівноваги
    iteration_tol: float = 1e-12
    max_steps: int = 10 ** 6
    residual_tol: float = 1e-10
    row_sum_tol: float = 1e-12
    z_range_tol: float = 1e-12

    # Похідні
    derivative_eta: float = 1e-9
    fd_step: float = 1e-5
    fd_step_second: float = 1e-4
    tie_tol: float = 1e-9
    compact_rel_tol: float = 1e-6
    fd_rel_tol_first: float = 1e-6
    fd_rel_tol_second: float = 1e-4
    fd_rel_tol_y: float = 1e-5

    # Обмеження перебору
    enumeration_limit: int = 25
    grid_agent_limit: int = 6
    grid_resolution: Fraction = Fraction(1, 64)
    grid_refine_rounds: int = 2
    max_grid_points: int = 4_000_000
    grid_batch_size: int = 100_000
    screen_tol: float = 1e-9

    # Проєктований спуск
    descent_steps: int = 200
    descent_step_size: float = 1.0
    descent_max_halvings: int = 30

    # Калібрування delta
    delta_search_iterations: int = 40
    probe_samples: int = 32

    # Набори перевірок
    suite_grid_resolution: Fraction = Fraction(1, 64)


SETTINGS = Settings()
