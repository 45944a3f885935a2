# -*- coding: utf-8 -*-
"""
Набори перевірок тотожностей, похідних і оцінок на відтворюваних випадках

Кожен набір приймає кількість спроб trials і зерно seed. Спроба t
використовує власний генератор default_rng([seed, номер набору, t]), тож
рядки не залежать від порядку виконання. Набори з фіксованим переліком
випадків проходять його циклічно; trials = 0 дає порожню таблицю.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np

from config import SETTINGS
from models.errors import GuardRefusal
from models.generators import random_alpha, random_instance
from models.instance import Norm
from models.network import build_clique_matrix, build_regular_matrix, mix_matrices
from models.scalar import EXACT
from optimizers.enumeration import solve_L1_concentrated
from optimizers.grid import GridOptimizer, concentration_gaps, is_concentrated
from reduction.catalog import CatalogGraph, catalog_graph, test_graph_catalog
from reduction.decision import decide_vc
from reduction.gadgets import build_l1_reduction, clique_instance
from services.calculus import (SensitivityReport, sweep_is_monotone, y_derivative_check, y_quantity,
                               y_sensitivity_sum, y_sweep)
from services.clique import (DeltaVariant, clique_closed_form, clique_mass_maximum, clique_yij, default_probes,
                             delta_formula, empirical_delta_star, mass_bound_delta, perturbation_sandwich,
                             y_negative_at_zero)
from services.equilibrium import iterate_dynamics, objective, pm_identity_check, solve_equilibrium
from services.finite_difference import (directional_second_difference, finite_difference_gradient,
                                        mixed_difference, relative_error, second_difference,
                                        y_entry_difference)
from services.linalg import inverse, max_abs
from services.reporting import Report, ReportRow, instance_digest

logger = logging.getLogger(__name__)

DISCREPANCY_TOL = 1e-10


@dataclass(frozen=True)
class SuiteOptions:
    """Параметри наборів, що перевизначаються з CLI"""
    resolution: Fraction = SETTINGS.suite_grid_resolution
    probe_samples: int = SETTINGS.probe_samples


def _rng(seed: int, suite: str, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, list(SUITES).index(suite), trial])


def _system(entries: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    return EXACT.eye(len(alpha)) - (1 - alpha)[:, None] * entries


def _pair(rng: np.random.Generator, low: int, high: int) -> Tuple[int, int]:
    i, j = rng.choice(np.arange(low, high), size=2, replace=False)
    return int(i), int(j)


def equilibrium_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """Прямий розв'язок, ітерація динаміки, доповнення та тотожність для PM"""
    rows = []
    for t in range(trials):
        rng = _rng(seed, "equilibrium", t)
        n = int(rng.integers(2, 16))
        instance = random_instance(rng, n, label=f"random-{n}")
        alpha = random_alpha(rng, instance)
        tag, experiment = instance_digest(instance), f"equilibrium/{t:04d}"

        report = iterate_dynamics(instance, alpha, backend=EXACT)
        discrepancy_ok = report.converged and report.discrepancy is not None \
            and report.discrepancy <= DISCREPANCY_TOL
        total = objective(instance, alpha) + objective(instance.complement(), alpha)
        pm = pm_identity_check(instance, alpha)
        rows += [
            ReportRow(experiment, tag, "residual", report.residual, Fraction(0), report.residual == 0),
            ReportRow(experiment, tag, "iterate-vs-solve discrepancy", report.discrepancy, DISCREPANCY_TOL,
                      discrepancy_ok),
            ReportRow(experiment, tag, "min z", min(report.z), Fraction(0), report.in_unit_range()),
            ReportRow(experiment, tag, "f + f(complement)", total, Fraction(n), total == n),
            ReportRow(experiment, tag, "PM identity (diagonal, off-diagonal subtract 0)",
                      pm.rows_checked, None, pm.diagonal_holds and pm.off_diagonal_subtract_zero),
        ]
    return rows


def gradients_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """Градієнт проти центральних різниць і друга форма c ⊙ (s - Pz)"""
    rows = []
    for t in range(trials):
        rng = _rng(seed, "gradients", t)
        instance = random_instance(rng, int(rng.integers(3, 9)))
        alpha = random_alpha(rng, instance, interior=True)
        tag, experiment = instance_digest(instance), f"gradients/{t:04d}"

        report = SensitivityReport(instance, alpha, EXACT)
        numeric = finite_difference_gradient(instance, alpha)
        free = [i for i, g in enumerate(report.grad) if g is not None]
        worst = max((relative_error(numeric[i], report.grad[i]) for i in free), default=0.0)
        second_form = report.c * (report.innate - report.P.dot(report.z))
        forms_agree = all(report.grad[i] == second_form[i] for i in free)
        rows += [
            ReportRow(experiment, tag, "gradient max rel error", worst, SETTINGS.fd_rel_tol_first,
                      worst <= SETTINGS.fd_rel_tol_first),
            ReportRow(experiment, tag, "gradient forms agree", len(free), None, forms_agree),
        ]
    return rows


def hessians_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """Чотири другі похідні, симетрія, напрямлена похідна та компактна форма при рівності градієнтів"""
    rows = []
    tol = SETTINGS.fd_rel_tol_second
    for t in range(trials):
        rng = _rng(seed, "hessians", t)
        instance = random_instance(rng, int(rng.integers(3, 9)))
        alpha = random_alpha(rng, instance, interior=True)
        i, j = _pair(rng, 0, instance.n_agents)
        tag, experiment = instance_digest(instance), f"hessians/{t:04d}"

        pair = SensitivityReport(instance, alpha, EXACT).hessian_pair(i, j)
        checks = [
            ("d2f/da_i^2", pair.d_ii, second_difference(instance, alpha, i)),
            ("d2f/da_j^2", pair.d_jj, second_difference(instance, alpha, j)),
            ("d2f/da_i da_j", pair.d_ij, mixed_difference(instance, alpha, i, j)),
            ("d2f/da_j da_i", pair.d_ji, mixed_difference(instance, alpha, j, i)),
            ("directional second derivative", pair.quadratic_form(),
             directional_second_difference(instance, alpha, i, j)),
        ]
        for quantity, analytic, numeric in checks:
            error = relative_error(numeric, analytic)
            rows.append(ReportRow(experiment, tag, f"{quantity} rel error", error, tol, error <= tol))
        rows.append(ReportRow(experiment, tag, "mixed partials symmetric", abs(pair.d_ij - pair.d_ji),
                              Fraction(0), pair.d_ij == pair.d_ji))

        # рівність градієнтів за симетрією кліки: alpha_i = alpha_j
        n = int(rng.integers(3, 7))
        clique = clique_instance(n)
        point = EXACT.array([1] + [Fraction(int(rng.integers(0, 9)), 10) for _ in range(n)])
        u, v = _pair(rng, 1, n + 1)
        point[v] = point[u]
        directional = SensitivityReport(clique, point, EXACT).dir2(u, v)
        rows.append(ReportRow(experiment, instance_digest(clique), "compact form under gradient tie",
                              directional.full, directional.compact, directional.tie and directional.agrees))
    return rows


def monotone_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """y_ij(alpha_j = 1) = 0, похідна за alpha_j і сталість знака на сітці"""
    rows = []
    for t in range(trials):
        rng = _rng(seed, "monotone", t)
        instance = random_instance(rng, int(rng.integers(3, 9)))
        alpha = random_alpha(rng, instance)
        j = int(rng.integers(1, instance.n_agents))
        i = int(rng.choice([k for k in range(instance.n_agents) if k != j]))
        tag, experiment = instance_digest(instance), f"monotone/{t:04d}"

        at_one = alpha.copy()
        at_one[j] = Fraction(1)
        y_one = y_quantity(instance, at_one, i, j)

        inner = alpha.copy()
        inner[j] = Fraction(int(rng.integers(1, 10)), 10)
        check = y_derivative_check(instance, inner, i, j)
        sweep = y_sweep(instance, alpha, i, j)
        rows += [
            ReportRow(experiment, tag, "y_ij at alpha_j = 1", y_one, Fraction(0), y_one == 0),
            ReportRow(experiment, tag, "dy_ij/dalpha_j residual", check.residual, SETTINGS.fd_rel_tol_y,
                      check.passed),
            ReportRow(experiment, tag, "y_ij sign-constant over alpha_j grid", sweep[0], None,
                      sweep_is_monotone(sweep)),
        ]
    return rows


def clique_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """Замкнені формули для P = C, максимум маси та зафіксована розбіжність 1ᵀM1 <= n"""
    rows = []
    sizes = list(range(2, 11))
    for t in range(trials):
        rng = _rng(seed, "clique", t)
        n = sizes[t % len(sizes)]
        anchor = t < len(sizes)
        alpha = EXACT.zeros(n + 1)
        alpha[0] = Fraction(1)
        if not anchor:
            for k in range(1, n + 1):
                alpha[k] = Fraction(int(rng.integers(0, 65)), 64)
        instance = clique_instance(n)
        tag, experiment = instance_digest(instance), f"clique/n{n:02d}/{t:04d}"

        closed = clique_closed_form(alpha, n)
        M = inverse(_system(build_clique_matrix(n).entries, alpha), EXACT)
        mass = M.sum()
        c = M.sum(axis=0)
        y12 = c[1] * (M[2, 2] - 1) - c[2] * M[2, 1]
        at_zero = alpha.copy()
        at_zero[2] = Fraction(0)
        y_zero = clique_yij(at_zero, n, 1, 2)
        maximum = clique_mass_maximum(n)
        rows += [
            ReportRow(experiment, tag, "closed-form M = inverse", max_abs(closed.M_closed - M), Fraction(0),
                      bool(np.all(closed.M_closed == M))),
            ReportRow(experiment, tag, "mass = w/(1+w)", mass, closed.total_mass, mass == closed.total_mass),
            ReportRow(experiment, tag, "y_12 closed form", y12, clique_yij(alpha, n, 1, 2),
                      y12 == clique_yij(alpha, n, 1, 2)),
            ReportRow(experiment, tag, "y_12 at alpha_2 = 0", y_zero, Fraction(-1, n + 1),
                      y_zero <= Fraction(-1, n + 1)),
            ReportRow(experiment, tag, "mass <= n^2 + n + 1", mass, Fraction(maximum), mass <= maximum),
        ]
        if anchor:
            rows.append(ReportRow(experiment, tag, "mass at alpha_V = 0", mass, Fraction(maximum),
                                  mass == maximum))
        if anchor and n == 2:
            rows += [
                ReportRow(experiment, tag, "anchor M_11", M[1, 1], Fraction(4, 3), M[1, 1] == Fraction(4, 3)),
                ReportRow(experiment, tag, "anchor y_12", y12, Fraction(-2, 3), y12 == Fraction(-2, 3)),
                # очікувана розбіжність: pass означає, що 1ᵀM1 > n відтворено
                ReportRow(experiment, tag, "erratum: mass exceeds n", mass, Fraction(n), mass > n),
            ]
    return rows


def _catalog_vertex(rng: np.random.Generator, n: int) -> np.ndarray:
    alpha = EXACT.array([1] + [int(b) for b in rng.integers(0, 2, size=n)])
    return alpha


def perturbation_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """Поелементна оцінка (P^(0) проти P^(delta)) і межа маси M^(delta)"""
    rows = []
    graphs = test_graph_catalog()
    for t in range(trials):
        rng = _rng(seed, "perturbation", t)
        graph = graphs[t % len(graphs)]
        n, d = graph.n, graph.d
        alpha = _catalog_vertex(rng, n)
        clique = build_clique_matrix(n)
        regular = build_regular_matrix(graph.edges, n, d)
        experiment = f"perturbation/{graph.name}/{t:04d}"

        for label, delta in (("corrected", delta_formula(n, d, DeltaVariant.CORRECTED)),
                             ("half", Fraction(d, 2 * n))):
            mixed = mix_matrices(clique, regular, delta)
            gadget = build_l1_reduction(graph.instance(1), delta).instance
            tag = instance_digest(gadget)
            z = solve_equilibrium(gadget, alpha).z
            positive = all(z[i] > 0 for i in range(1, n + 1) if alpha[i] < 1)
            epsilon = delta * n / d
            certificate = perturbation_sandwich(_system(clique.entries, alpha), _system(mixed.entries, alpha),
                                                epsilon)
            bound = mass_bound_delta(n, graph.edges, d, alpha, delta)
            rows += [
                ReportRow(experiment, tag, f"sandwich entries ({label})", certificate.entries_passed,
                          certificate.entries_total, certificate.holds),
                ReportRow(experiment, tag, f"sandwich hypothesis ({label})", certificate.epsilon, None,
                          certificate.applicable),
                ReportRow(experiment, tag, f"mass bound ({label})", bound.measured, bound.bound, bound.holds),
                ReportRow(experiment, tag, f"z_i > 0 where alpha_i < 1 ({label})", min(z[1:]), Fraction(0),
                          positive),
            ]
    return rows


def sensitivity_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """Сума |dy_ij/dP_kl| <= 4(1ᵀM1)^3 і скінченна різниця одного елемента"""
    rows = []
    for t in range(trials):
        rng = _rng(seed, "sensitivity", t)
        instance = random_instance(rng, int(rng.integers(3, 8)))
        alpha = random_alpha(rng, instance)
        i, j = _pair(rng, 0, instance.n_agents)
        k, l = (int(v) for v in rng.integers(0, instance.n_agents, size=2))
        tag, experiment = instance_digest(instance), f"sensitivity/{t:04d}"

        check = y_sensitivity_sum(instance, alpha, i, j)
        analytic = SensitivityReport(instance, alpha, EXACT).dy_dP(i, j)[k, l]
        error = relative_error(y_entry_difference(instance, alpha, i, j, k, l), analytic)
        rows += [
            ReportRow(experiment, tag, "sum |dy/dP| <= 4 mass^3", check.value, check.bound, check.holds),
            ReportRow(experiment, tag, "dy/dP finite difference rel error", error, SETTINGS.fd_rel_tol_y,
                      error <= SETTINGS.fd_rel_tol_y),
        ]
    return rows


STRUCTURE_CASES: Tuple[Tuple[str, int], ...] = (
    ("C3", 2), ("C3", 1), ("C4", 2), ("C4", 1), ("K4", 2), ("K4", 1),
    ("C5", 1), ("C6", 1), ("prism", 1), ("K3,3", 1), ("2C3", 1),
)


def _grid_within_guard(instance, k, resolution: Fraction):
    """Сітковий оракул із заданим кроком; при відмові запобіжника крок подвоюється"""
    while True:
        try:
            return GridOptimizer(instance, k, resolution=resolution).optimize(), resolution
        except GuardRefusal as exc:
            if resolution >= 1:
                raise
            logger.warning("%s; крок сітки збільшено з %s до %s", exc, resolution, resolution * 2)
            resolution *= 2


def structure_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """
    Сітковий оракул на L1-гаджетах: мінімум концентрований і не кращий за точний концентрований

    Випадки, для яких сітка з кроком options.resolution перевищує запобіжник,
    рахуються на найдрібнішому допустимому кроці; фактичний крок іде у звіт.
    """
    rows = []
    for t in range(trials):
        name, k = STRUCTURE_CASES[t % len(STRUCTURE_CASES)]
        artifact = build_l1_reduction(catalog_graph(name).instance(k))
        tag, experiment = instance_digest(artifact.instance), f"structure/{name}-k{k}/{t:04d}"

        exact = solve_L1_concentrated(artifact.instance, k)
        grid, resolution = _grid_within_guard(artifact.instance, k, options.resolution)
        slack = SETTINGS.residual_tol * max(1.0, float(exact.f_star))
        rows += [
            ReportRow(experiment, tag, "grid resolution", resolution, options.resolution, True),
            ReportRow(experiment, tag, "grid f* >= concentrated f*", float(grid.f_star), exact.f_star,
                      float(grid.f_star) >= float(exact.f_star) - slack),
            ReportRow(experiment, tag, "grid incumbent within one cell of endpoints",
                      max(concentration_gaps(grid, artifact.instance)), resolution,
                      is_concentrated(grid, artifact.instance, resolution)),
        ]
    return rows


def _reduction_cases() -> List[Tuple[CatalogGraph, int, Norm]]:
    return [(graph, k, kind) for graph in test_graph_catalog()
            for k in range(1, graph.n + 1) for kind in (Norm.L0, Norm.L1)]


def reduction_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """Повний конвеєр decide_vc проти повного перебору покриттів"""
    rows = []
    cases = _reduction_cases()
    for t in range(trials):
        graph, k, kind = cases[t % len(cases)]
        decision = decide_vc(graph.instance(k), kind)
        artifact = decision.artifact
        tag = instance_digest(artifact.instance)
        experiment = f"reduction/{kind.value}/{graph.name}-k{k}/{t:04d}"
        threshold = artifact.theta if decision.yes else artifact.theta + artifact.gap

        rows += [
            ReportRow(experiment, tag, "answer matches brute force", decision.yes,
                      decision.bruteforce_cover is not None, decision.agrees),
            ReportRow(experiment, tag, "f* = theta" if decision.yes else "f* >= theta + gap",
                      decision.f_star, threshold, decision.separated),
        ]
        if decision.yes_certificate is not None:
            certificate = decision.yes_certificate
            rows.append(ReportRow(experiment, tag, "YES certificate f(cover) = theta", certificate.f_value,
                                  certificate.theta, certificate.status.value == "pass"))
        if decision.no_chain is not None:
            for quantity, passed in decision.no_chain.checks:
                rows.append(ReportRow(experiment, tag, f"NO chain: {quantity}", decision.no_chain.f_value,
                                      decision.no_chain.f_bound, passed))
        if decision.grid_value is not None:
            # розбіжність із сіткою фіксується як спостереження, а не як провал
            rows.append(ReportRow(experiment, tag, "grid cross-check f*", decision.grid_value,
                                  "; ".join(decision.findings) or decision.f_star, True))
    return rows


def negativity_suite(trials: int, seed: int, options: SuiteOptions) -> List[ReportRow]:
    """y_ij^(delta) < 0 при alpha_j = 0 для виправленого delta та емпіричне delta*"""
    rows = []
    graphs = test_graph_catalog()
    for t in range(trials):
        graph = graphs[t % len(graphs)]
        n, d = graph.n, graph.d
        probe_seed = seed * 1000 + t
        probes = default_probes(n, options.probe_samples, probe_seed)
        corrected = delta_formula(n, d, DeltaVariant.CORRECTED)
        artifact = build_l1_reduction(graph.instance(1), corrected)
        tag, experiment = instance_digest(artifact.instance), f"negativity/{graph.name}/{t:04d}"

        negative = y_negative_at_zero(EXACT.array(artifact.instance.interaction.entries), probes, n, EXACT)
        search = empirical_delta_star(n, graph.edges, d, probes=probes)
        rows += [
            ReportRow(experiment, tag, "y_ij < 0 at corrected delta", corrected, None, negative),
            ReportRow(experiment, tag, "delta* >= corrected delta", search.delta_star, corrected,
                      search.certified and search.delta_star >= corrected),
            ReportRow(experiment, tag, "delta (paper formula)", search.paper, None, True),
            ReportRow(experiment, tag, "delta* / corrected delta", search.ratio_to_corrected, None, True),
        ]
    return rows


SUITES: Dict[str, Callable[[int, int, SuiteOptions], List[ReportRow]]] = {
    "equilibrium": equilibrium_suite,
    "gradients": gradients_suite,
    "hessians": hessians_suite,
    "monotone": monotone_suite,
    "clique": clique_suite,
    "perturbation": perturbation_suite,
    "sensitivity": sensitivity_suite,
    "structure": structure_suite,
    "reduction": reduction_suite,
    "negativity": negativity_suite,
}


def suite_names(name: str) -> List[str]:
    """Розгортає "all" у перелік наборів"""
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise ValueError(f"Невідомий набір {name!r}; доступні: all, {', '.join(SUITES)}")
    return [name]


def run_suites(names: Iterable[str], trials: int, seed: int,
               options: SuiteOptions = SuiteOptions()) -> Report:
    """
    Виконує набори і збирає рядки в один звіт

    Args:
        names: Назви наборів (або ["all"])
        trials: Кількість спроб у кожному наборі
        seed: Зерно
        options: Параметри наборів

    Returns:
        Report
    """
    if trials < 0:
        raise ValueError(f"Кількість спроб має бути невід'ємною, отримано {trials}")
    report = Report()
    for name in names:
        for suite in suite_names(name):
            logger.info("Набір %s: %d спроб", suite, trials)
            report.extend(SUITES[suite](trials, seed, options))
    return report
