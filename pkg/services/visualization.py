# -*- coding: utf-8 -*-
"""
Візуалізація експериментів: крива зосередження бюджету та пошук delta*
"""

import logging
import os
from typing import Optional

import matplotlib.pyplot as plt

from optimizers.focus import FocusCurve
from services.clique import DeltaSearchResult

logger = logging.getLogger(__name__)


class ExperimentVisualizer:
    """
    Графіки для CLI-команд focus та delta-search
    """

    def __init__(self, figsize=(10, 6)):
        """
        Args:
            figsize: Розмір фігури (ширина, висота)
        """
        self.figsize = figsize
        self.colors = {
            'curve': '#45B7D1',      # Синій
            'minimum': '#FF6B6B',    # Червоний
            'paper': '#95A5A6',      # Сірий
            'corrected': '#27AE60',  # Зелений
            'bracket': '#4ECDC4',    # Бірюзовий
        }

    def _save(self, fig, save_path: Optional[str]) -> None:
        if save_path:
            directory = os.path.dirname(save_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            fig.savefig(save_path, dpi=150, bbox_inches='tight')
            logger.info("Графік збережено: %s", save_path)
        plt.close(fig)

    def plot_focus_curve(self, curve: FocusCurve, save_path: Optional[str] = None):
        """
        Малює f(t) уздовж alpha_i = t, alpha_j = b - t

        Args:
            curve: Результат focus_vs_spread
            save_path: Шлях для збереження графіка

        Returns:
            Matplotlib axes
        """
        fig, ax = plt.subplots(figsize=self.figsize)
        ts = [float(t) for t, _ in curve.points]
        values = [float(v) for _, v in curve.points]

        ax.plot(ts, values, color=self.colors['curve'], marker='o', linewidth=2, label='f(t)')
        ax.scatter([float(curve.argmin_t)], [float(curve.f_min)], c=self.colors['minimum'], s=150,
                   marker='*', edgecolors='black', zorder=5,
                   label='мінімум (зосередження)' if curve.is_focus else 'мінімум (розподіл)')

        ax.set_title(f"Розподіл бюджету b = {curve.budget} між агентами {curve.i} та {curve.j}",
                     fontsize=13, fontweight='bold')
        ax.set_xlabel(f'alpha_{curve.i} = t', fontsize=11)
        ax.set_ylabel('f(alpha) = 1ᵀz', fontsize=11)
        ax.grid(True, alpha=0.3, linestyle='--')
        ax.legend(fontsize=9)
        self._save(fig, save_path)
        return ax

    def plot_delta_search(self, result: DeltaSearchResult, save_path: Optional[str] = None):
        """
        Малює звуження дужки бісекції в логарифмічному масштабі разом з формулами delta

        Args:
            result: Результат empirical_delta_star
            save_path: Шлях для збереження графіка

        Returns:
            Matplotlib axes
        """
        fig, ax = plt.subplots(figsize=self.figsize)
        steps = range(1, len(result.history) + 1)
        if result.history:
            ax.fill_between(steps, [lo for lo, _ in result.history], [hi for _, hi in result.history],
                            color=self.colors['bracket'], alpha=0.4, label='дужка [lo, hi]')
        ax.axhline(float(result.delta_star), color=self.colors['minimum'], linewidth=2,
                   label=f'delta* = {float(result.delta_star):.4g}')
        ax.axhline(float(result.paper), color=self.colors['paper'], linestyle='--',
                   label=f'формула (paper) = {float(result.paper):.3g}')
        ax.axhline(float(result.corrected), color=self.colors['corrected'], linestyle=':',
                   label=f'формула (corrected) = {float(result.corrected):.3g}')

        ax.set_yscale('log')
        ax.set_title('Емпіричний пошук delta*', fontsize=13, fontweight='bold')
        ax.set_xlabel('Крок бісекції', fontsize=11)
        ax.set_ylabel('delta', fontsize=11)
        ax.grid(True, alpha=0.3, linestyle='--')
        ax.legend(fontsize=9)
        self._save(fig, save_path)
        return ax
