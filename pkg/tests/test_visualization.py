# -*- coding: utf-8 -*-
"""
Тести графіків
"""

import matplotlib

matplotlib.use("Agg")

from optimizers.focus import focus_vs_spread  # noqa: E402
from services.clique import empirical_delta_star  # noqa: E402
from services.visualization import ExperimentVisualizer  # noqa: E402


class TestExperimentVisualizer:
    """PNG-файли для focus та delta-search"""

    def test_focus_curve(self, clique2, tmp_path):
        path = tmp_path / "plots" / "focus.png"
        ax = ExperimentVisualizer().plot_focus_curve(focus_vs_spread(clique2, 1, 2, 1, samples=5), str(path))
        assert path.exists()
        assert "b = 1" in ax.get_title()

    def test_delta_search(self, tmp_path):
        path = tmp_path / "delta.png"
        result = empirical_delta_star(3, ((1, 2), (2, 3), (1, 3)), 2, samples=2)
        ExperimentVisualizer().plot_delta_search(result, str(path))
        assert path.exists()
