# -*- coding: utf-8 -*-
"""
Тести вершинного покриття, гаджетів L0/L1, сертифікатів і decide_vc
"""

from fractions import Fraction

import networkx as nx
import pytest

from models.errors import ConstructionError, GuardRefusal, HypothesisError, InstanceError
from models.instance import Norm
from reduction.catalog import catalog_graph, catalog_names, from_networkx, random_regular, test_graph_catalog
from reduction.decision import decide_vc
from reduction.gadgets import (CertStatus, build_l0_reduction, build_l1_reduction, certify_yes, cover_to_alpha,
                               l1_gamma0, l1_theta, no_instance_chain)
from reduction.vertex_cover import VertexCoverInstance, vc_bruteforce
from services.clique import DeltaVariant


class TestVertexCover:
    """Екземпляр і повний перебір"""

    def test_bruteforce(self, triangle):
        assert vc_bruteforce(triangle) == (1, 2)
        assert vc_bruteforce(triangle.with_k(1)) is None
        assert vc_bruteforce(catalog_graph("K4").instance(3)) == (1, 2, 3)
        assert vc_bruteforce(catalog_graph("C4").instance(2)) == (1, 3)

    def test_cover_checks(self, triangle):
        assert triangle.is_cover((1, 3))
        assert triangle.uncovered_edges((1,)) == [(2, 3)]

    def test_edges_are_normalized(self):
        instance = VertexCoverInstance(n=3, edges=((2, 1), (3, 2), (3, 1)), d=2, k=1)
        assert instance.edges == ((1, 2), (1, 3), (2, 3))

    def test_invalid_k_and_graph(self, triangle):
        with pytest.raises(ConstructionError):
            triangle.with_k(0)
        with pytest.raises(ConstructionError):
            triangle.with_k(4)
        with pytest.raises(ConstructionError, match="вершина"):
            VertexCoverInstance(n=4, edges=((1, 2), (2, 3), (3, 4)), d=2, k=2)

    def test_guard(self, triangle):
        with pytest.raises(GuardRefusal):
            vc_bruteforce(triangle, limit=2)


class TestCatalog:
    """Каталог тестових графів"""

    def test_catalog_contents(self):
        graphs = test_graph_catalog()
        assert len(graphs) == len(catalog_names()) == 14
        assert all(g.d in (2, 3) and g.n <= 8 for g in graphs)
        assert {g.name for g in test_graph_catalog(max_n=4)} == {"C3", "C4", "K4"}

    def test_cube(self):
        cube = catalog_graph("Q3")
        assert (cube.n, cube.d, len(cube.edges)) == (8, 3, 12)
        assert vc_bruteforce(cube.instance(4)) is not None
        assert vc_bruteforce(cube.instance(3)) is None

    def test_non_regular_rejected(self):
        with pytest.raises(ValueError):
            from_networkx("path", nx.path_graph(3))

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            catalog_graph("Petersen")

    def test_random_regular_is_reproducible(self):
        first = random_regular(6, 3, seed=5)
        assert first == random_regular(6, 3, seed=5)
        assert first.instance(3).d == 3


class TestL0Gadget:
    """Гаджет для L0-бюджету"""

    def test_triangle_constants(self, triangle_l0):
        assert triangle_l0.theta == Fraction(4, 3)
        assert triangle_l0.gap == Fraction(1, 3)
        assert triangle_l0.budget.norm is Norm.L0
        P = triangle_l0.instance.interaction.entries
        assert P[0, 1] == Fraction(1, 3)
        assert P[1, 0] == P[1, 2] == Fraction(1, 3)
        assert P[1, 1] == 0
        assert list(triangle_l0.instance.innate) == [1, 0, 0, 0]

    def test_k4_theta(self):
        artifact = build_l0_reduction(catalog_graph("K4").instance(3))
        assert artifact.theta == Fraction(5, 4)
        assert artifact.gap == Fraction(1, 6)

    def test_cover_to_alpha(self, triangle_l0):
        vector = cover_to_alpha(triangle_l0, (2, 1))
        assert list(vector.alpha) == [1, 1, 1, 0]
        assert vector.l0_used == 2
        with pytest.raises(InstanceError):
            cover_to_alpha(triangle_l0, (4,))
        with pytest.raises(InstanceError):
            cover_to_alpha(triangle_l0, (1, 2, 3))

    def test_yes_certificate(self, triangle_l0):
        certificate = certify_yes(triangle_l0, (1, 2))
        assert certificate.status is CertStatus.PASS
        assert certificate.f_value == Fraction(4, 3)

    def test_yes_certificate_pads_small_cover(self):
        artifact = build_l0_reduction(catalog_graph("C4").instance(3))
        certificate = certify_yes(artifact, (1, 3))
        assert certificate.cover == (1, 2, 3)
        assert certificate.status is CertStatus.PASS
        assert certificate.f_value == artifact.theta == Fraction(4, 3)

    def test_yes_certificate_inapplicable(self, triangle_l0):
        assert certify_yes(triangle_l0, (1,)).status is CertStatus.INAPPLICABLE

    def test_no_chain_boundary_attained(self, triangle):
        artifact = build_l0_reduction(triangle.with_k(1))
        chain = no_instance_chain(artifact, (1,))
        assert chain.holds
        assert chain.f_value == chain.f_bound == 2
        assert chain.gamma == chain.gamma_hat == Fraction(1, 2)

    def test_no_chain_refuses_cover(self, triangle_l0):
        with pytest.raises(HypothesisError):
            no_instance_chain(triangle_l0, (1, 2))


class TestL1Gadget:
    """Гаджет для L1-бюджету"""

    def test_corrected_default(self, triangle_l1):
        delta = Fraction(729, 64 * 10 ** 9)
        assert triangle_l1.delta == delta
        assert triangle_l1.delta_source == "corrected"
        assert triangle_l1.theta == 1 + (1 - delta) / 3 == l1_theta(3, 2, delta)
        assert triangle_l1.gap == delta / 6

    def test_paper_and_explicit(self, triangle):
        assert build_l1_reduction(triangle, "paper").delta == Fraction(729, 10 ** 9)
        assert build_l1_reduction(triangle, DeltaVariant.PAPER).delta_source == "paper"
        explicit = build_l1_reduction(triangle, "1/100")
        assert explicit.delta == Fraction(1, 100)
        assert explicit.delta_source == "explicit"

    def test_delta_must_stay_below_d_over_n(self, triangle):
        with pytest.raises(HypothesisError):
            build_l1_reduction(triangle, Fraction(2, 3))

    def test_gamma0(self):
        delta = Fraction(1, 10)
        assert l1_gamma0(3, 1, delta) == Fraction(9, 10) / (3 - Fraction(9, 10))

    def test_yes_certificate(self, triangle_l1):
        certificate = certify_yes(triangle_l1, (2, 3))
        assert certificate.status is CertStatus.PASS
        assert certificate.f_value == triangle_l1.theta

    def test_no_chain(self, triangle):
        artifact = build_l1_reduction(triangle.with_k(1))
        chain = no_instance_chain(artifact, (1,))
        assert chain.holds, chain.checks
        assert chain.f_value >= artifact.theta + artifact.gap


class TestDecision:
    """decide_vc проти повного перебору"""

    def test_triangle_l0(self, triangle):
        yes = decide_vc(triangle, Norm.L0)
        assert yes.yes and yes.agrees and yes.separated
        assert yes.f_star == Fraction(4, 3)
        assert yes.yes_certificate.status is CertStatus.PASS

        no = decide_vc(triangle.with_k(1), "l0")
        assert not no.yes and no.agrees and no.separated
        assert no.f_star == 2
        assert no.no_chain.holds

    def test_triangle_l1(self, triangle):
        yes = decide_vc(triangle, Norm.L1)
        assert yes.yes and yes.agrees and yes.separated
        assert yes.f_star == yes.artifact.theta
        assert yes.grid_value is not None

        no = decide_vc(triangle.with_k(1), Norm.L1, cross_check=False)
        assert not no.yes and no.agrees and no.separated
        assert no.grid_value is None
        assert no.no_chain.holds

    def test_unbudgeted_rejected(self, triangle):
        with pytest.raises(ValueError):
            decide_vc(triangle, Norm.UNBUDGETED)

    @pytest.mark.slow
    @pytest.mark.parametrize("graph", test_graph_catalog(), ids=lambda g: g.name)
    def test_catalog_agrees_with_bruteforce(self, graph):
        for instance in graph.instances():
            for kind in (Norm.L0, Norm.L1):
                decision = decide_vc(instance, kind, cross_check=False)
                assert decision.agrees, (graph.name, instance.k, kind)
                assert decision.separated, (graph.name, instance.k, kind)
