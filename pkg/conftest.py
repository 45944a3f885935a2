# -*- coding: utf-8 -*-
"""
Спільні фікстури тестів
"""

import os
import sys
from fractions import Fraction

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from models.instance import InteractionMatrix, OpinionInstance  # noqa: E402
from reduction.gadgets import build_l0_reduction, build_l1_reduction, clique_instance  # noqa: E402
from reduction.vertex_cover import VertexCoverInstance  # noqa: E402

TRIANGLE_EDGES = ((1, 2), (2, 3), (1, 3))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def pair_instance():
    """Два агенти, P = [[0, 1], [1, 0]], s = (1, 0), alpha^ = (1/2, 1/2)"""
    half = Fraction(1, 2)
    return OpinionInstance(
        innate=np.array([Fraction(1), Fraction(0)], dtype=object),
        bounds=np.array([[half, Fraction(1)], [Fraction(0), Fraction(1)]], dtype=object),
        alpha_init=np.array([half, half], dtype=object),
        interaction=InteractionMatrix(np.array([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]],
                                               dtype=object)),
        label="pair",
    )


@pytest.fixture
def clique2():
    return clique_instance(2)


@pytest.fixture
def triangle():
    return VertexCoverInstance(n=3, edges=TRIANGLE_EDGES, d=2, k=2)


@pytest.fixture
def triangle_l0(triangle):
    return build_l0_reduction(triangle)


@pytest.fixture
def triangle_l1(triangle):
    return build_l1_reduction(triangle)
