# -*- coding: utf-8 -*-
"""
Головний файл програми: рівновага, оптимізація сприйнятливості, гаджети зведення та перевірки

Звіти (CSV або JSON гаджета) пишуться у stdout або у файл --out,
підсумки та журнал у stderr.

Коди виходу: 0 успіх, 1 провал перевірки чи валідації, 2 помилка вводу,
3 відмова запобіжника розміру.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from models.errors import (ConstructionError, GuardRefusal, HypothesisError, InputError, InstanceError,
                           SingularSystemError)
from models.instance import Norm, OpinionInstance
from models.scalar import format_rational, get_backend, parse_scalar
from optimizers.base import Optimizer
from optimizers.coordinate import CoordinateOptimizer
from optimizers.descent import ProjectedDescentOptimizer
from optimizers.enumeration import ConcentratedL1Optimizer, L0Optimizer
from optimizers.focus import focus_vs_spread
from optimizers.grid import GridOptimizer
from reduction.gadgets import build_l0_reduction, build_l1_reduction
from services.clique import empirical_delta_star
from services.data_loader import artifact_to_dict, load_alpha, load_graph, load_instance
from services.equilibrium import iterate_dynamics, solve_equilibrium
from services.reporting import Report, instance_digest
from services.validation import validate_instance
from verification.suites import SUITES, SuiteOptions, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

METHODS = ("auto", "enum", "concentrated", "grid", "descent")


def _banner(title: str) -> None:
    print("\n" + "=" * 60, file=sys.stderr)
    print(title, file=sys.stderr)
    print("=" * 60, file=sys.stderr)


def _rational(text: str, name: str):
    try:
        return parse_scalar(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{name}: некоректне число {text!r}") from exc


def _load_valid_instance(path: str) -> Optional[OpinionInstance]:
    """Завантажує екземпляр; при порушеннях передумов друкує їх і повертає None"""
    instance = load_instance(path)
    issues = validate_instance(instance)
    if issues:
        _banner(f"ЕКЗЕМПЛЯР НЕКОРЕКТНИЙ: {path}")
        for issue in issues:
            print(f"  ✗ {issue}", file=sys.stderr)
        return None
    return instance


def _emit(report: Report, args) -> None:
    report.save(args.out)


def cmd_equilibrium(args) -> int:
    """Прямий розв'язок та ітерація динаміки для одного alpha"""
    instance = _load_valid_instance(args.instance)
    if instance is None:
        return EXIT_FAILURE
    alpha = load_alpha(args.alpha, instance) if args.alpha else None
    backend = get_backend(args.backend)

    direct = solve_equilibrium(instance, alpha, backend)
    iterative = iterate_dynamics(instance, alpha, backend=backend)
    tag = instance_digest(instance)

    report = Report()
    for i, value in enumerate(direct.z):
        report.add("equilibrium/direct", tag, f"z[{i:03d}]", value)
    report.add("equilibrium/direct", tag, "f", direct.f_value)
    report.add("equilibrium/direct", tag, "residual", direct.residual)
    report.add("equilibrium/direct", tag, "z in [0,1]", direct.in_unit_range(), None, direct.in_unit_range())
    report.add("equilibrium/iterative", tag, "f", iterative.f_value)
    report.add("equilibrium/iterative", tag, "iterations", iterative.iterations, None, iterative.converged)
    if iterative.discrepancy is not None:
        report.add("equilibrium/iterative", tag, "discrepancy", iterative.discrepancy)
    _emit(report, args)

    _banner("РІВНОВАГА")
    print(f"Агентів:               {instance.n_agents}", file=sys.stderr)
    print(f"f (прямий):            {float(direct.f_value):.15g}", file=sys.stderr)
    print(f"Залишок:               {float(direct.residual):.3g}", file=sys.stderr)
    print(f"Ітерацій динаміки:     {iterative.iterations} ({'збіглася' if iterative.converged else 'НЕ збіглася'})",
          file=sys.stderr)
    if iterative.discrepancy is not None:
        print(f"Розбіжність:           {iterative.discrepancy:.3g}", file=sys.stderr)
    return EXIT_OK if iterative.converged else EXIT_FAILURE


def build_optimizer(instance: OpinionInstance, norm: Norm, budget, method: str, backend) -> Optimizer:
    """
    Обирає розв'язувач за нормою та методом

    auto: для L0 перебір, для L1 концентрований перебір, а за відмови
    запобіжника проєктований спуск; без бюджету локальний пошук.

    Raises:
        InputError: Метод не визначений для цієї норми
        GuardRefusal: Явно обраний перебір перевищує межі
    """
    if norm is Norm.UNBUDGETED:
        if method not in ("auto", "enum"):
            raise InputError(f"Метод {method} не визначений без бюджету")
        return CoordinateOptimizer(instance, backend)
    if norm is Norm.L0:
        if method not in ("auto", "enum"):
            raise InputError(f"Метод {method} не визначений для L0")
        return L0Optimizer(instance, int(budget), backend)
    if method == "grid":
        return GridOptimizer(instance, budget)
    if method == "descent":
        return ProjectedDescentOptimizer(instance, budget)
    if method == "auto":
        try:
            return ConcentratedL1Optimizer(instance, budget, backend)
        except GuardRefusal as exc:
            logger.info("Перебір відхилено (%s), використовується спуск", exc)
            return ProjectedDescentOptimizer(instance, budget)
    return ConcentratedL1Optimizer(instance, budget, backend)


def cmd_solve(args) -> int:
    """Оптимізація з бюджетом L0, L1 або без нього"""
    instance = _load_valid_instance(args.instance)
    if instance is None:
        return EXIT_FAILURE
    norm = Norm(args.norm)
    budget = _rational(args.budget, "--budget")
    if norm is Norm.L0 and budget.denominator != 1:
        raise InputError(f"--budget: L0-бюджет має бути цілим, отримано {args.budget}")

    optimizer = build_optimizer(instance, norm, budget, args.method, get_backend(args.backend))
    result = optimizer.optimize()
    tag = instance_digest(instance)
    experiment = f"solve/{norm.value}/{result.method}"

    report = Report()
    report.add(experiment, tag, "f*", result.f_star)
    for i, value in enumerate(result.alpha_star.alpha):
        report.add(experiment, tag, f"alpha*[{i:03d}]", value)
    report.add(experiment, tag, "l0 used", result.l0_used, budget if norm is Norm.L0 else None)
    report.add(experiment, tag, "l1 used", result.l1_used, budget if norm is Norm.L1 else None)
    report.add(experiment, tag, "oracle", result.oracle)
    _emit(report, args)

    optimizer.print_results(file=sys.stderr)
    print("Сертифікат:", file=sys.stderr)
    for key, value in result.certificate.items():
        print(f"  {key:<20} {value}", file=sys.stderr)
    return EXIT_OK


def cmd_reduce(args) -> int:
    """Будує гаджет L0 або L1 для графа і пише його JSON"""
    graph = load_graph(args.graph)
    if args.kind == Norm.L0.value:
        artifact = build_l0_reduction(graph)
    else:
        delta = args.delta if args.delta in ("paper", "corrected") else _rational(args.delta, "--delta")
        artifact = build_l1_reduction(graph, delta)

    text = json.dumps(artifact_to_dict(artifact), indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        sys.stdout.write(text)

    _banner(f"ГАДЖЕТ {artifact.kind.value.upper()}: n = {graph.n}, d = {graph.d}, k = {graph.k}")
    print(f"theta:                 {format_rational(artifact.theta)} ≈ {float(artifact.theta):.15g}", file=sys.stderr)
    print(f"Відрив:                {format_rational(artifact.gap)} ≈ {float(artifact.gap):.6g}", file=sys.stderr)
    if artifact.delta is not None:
        print(f"delta ({artifact.delta_source}):".ljust(23) + f"{format_rational(artifact.delta)}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Набори перевірок; ненульовий код, якщо хоч один рядок провалено"""
    resolution = _rational(args.resolution, "--resolution") if args.resolution else SuiteOptions().resolution
    options = SuiteOptions(resolution=resolution)
    try:
        report = run_suites([args.suite], args.trials, args.seed, options)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(report, args)
    report.print_summary(f"ПЕРЕВІРКА: {args.suite}, спроб {args.trials}, зерно {args.seed}")
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_delta_search(args) -> int:
    """Емпіричний пошук delta* для графа"""
    graph = load_graph(args.graph)
    result = empirical_delta_star(graph.n, graph.edges, graph.d, samples=args.probes, seed=args.seed)
    experiment = f"delta-search/n{graph.n}-d{graph.d}"
    tag = instance_digest(build_l1_reduction(graph).instance)

    report = Report()
    report.add(experiment, tag, "delta*", result.delta_star, result.corrected,
               result.certified and result.delta_star >= result.corrected)
    report.add(experiment, tag, "delta (paper formula)", result.paper)
    report.add(experiment, tag, "delta (corrected formula)", result.corrected)
    report.add(experiment, tag, "delta* / corrected", result.ratio_to_corrected)
    report.add(experiment, tag, "no sign change in range", result.no_sign_change)
    _emit(report, args)
    logger.info("delta* / corrected delta = %.6g", result.ratio_to_corrected)

    _banner(f"ПОШУК delta*: n = {graph.n}, d = {graph.d}")
    print(f"delta*:                {float(result.delta_star):.6g} "
          f"({'сертифіковано' if result.certified else 'не сертифіковано'})", file=sys.stderr)
    print(f"Формула (paper):       {float(result.paper):.6g}", file=sys.stderr)
    print(f"Формула (corrected):   {float(result.corrected):.6g}", file=sys.stderr)
    print(f"Проб:                  {result.probes}", file=sys.stderr)

    if args.plot:
        from services.visualization import ExperimentVisualizer
        ExperimentVisualizer().plot_delta_search(result, save_path=args.plot)
    return EXIT_OK if result.certified else EXIT_FAILURE


def cmd_focus(args) -> int:
    """Крива f(t) при розподілі бюджету b між двома агентами"""
    instance = _load_valid_instance(args.instance)
    if instance is None:
        return EXIT_FAILURE
    budget = _rational(args.budget, "--budget")
    curve = focus_vs_spread(instance, args.i, args.j, budget, samples=args.samples,
                            backend=get_backend(args.backend))
    tag = instance_digest(instance)
    experiment = f"focus/{args.i}-{args.j}"

    report = Report()
    for index, (t, value) in enumerate(curve.points):
        report.add(experiment, tag, f"f(t[{index:03d}])", value, t)
    report.add(experiment, tag, "argmin t", curve.argmin_t)
    report.add(experiment, tag, "minimum at endpoint", curve.is_focus)
    _emit(report, args)

    _banner(f"ЗОСЕРЕДЖЕННЯ ПРОТИ РОЗПОДІЛУ: агенти {args.i}, {args.j}, b = {format_rational(budget)}")
    low, high = curve.t_range
    print(f"Проміжок t:            [{float(low):.6g}, {float(high):.6g}]", file=sys.stderr)
    print(f"argmin t:              {float(curve.argmin_t):.6g}", file=sys.stderr)
    print(f"min f:                 {float(curve.f_min):.15g}", file=sys.stderr)
    print(f"Мінімум на кінці:      {'так' if curve.is_focus else 'ні'}", file=sys.stderr)

    if args.plot:
        from services.visualization import ExperimentVisualizer
        ExperimentVisualizer().plot_focus_curve(curve, save_path=args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("exact", "float"), default="exact", help="Арифметика")
    common.add_argument("--seed", type=int, default=0, help="Зерно генератора")
    common.add_argument("--out", default=None, help="Файл звіту (за замовчуванням stdout)")
    common.add_argument("--verbose", action="store_true", help="Журнал рівня DEBUG")

    parser = argparse.ArgumentParser(
        description="Оптимізація сприйнятливості в моделі динаміки думок та перевірка гаджетів зведення")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equilibrium", parents=[common], help="Рівновага для екземпляра")
    p.add_argument("instance")
    p.add_argument("alpha", nargs="?", default=None)
    p.set_defaults(handler=cmd_equilibrium)

    p = sub.add_parser("solve", parents=[common], help="Мінімізація f з бюджетом")
    p.add_argument("instance")
    p.add_argument("--norm", choices=[norm.value for norm in Norm], default=Norm.L0.value)
    p.add_argument("--budget", default="0")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("reduce", parents=[common], help="Гаджет зведення для графа")
    p.add_argument("graph")
    p.add_argument("--kind", choices=(Norm.L0.value, Norm.L1.value), default=Norm.L0.value)
    p.add_argument("--delta", default="corrected", help="paper, corrected або p/q")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("verify", parents=[common], help="Набори перевірок")
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--resolution", default=None, help="Крок сітки набору structure (p/q)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("delta-search", parents=[common], help="Емпіричний пошук delta*")
    p.add_argument("graph")
    p.add_argument("--probes", type=int, default=32)
    p.add_argument("--plot", default=None)
    p.set_defaults(handler=cmd_delta_search)

    p = sub.add_parser("focus", parents=[common], help="Зосередження бюджету проти розподілу")
    p.add_argument("instance")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--budget", default="1")
    p.add_argument("--samples", type=int, default=17)
    p.add_argument("--plot", default=None)
    p.set_defaults(handler=cmd_focus)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Основна функція програми

    Args:
        argv: Аргументи командного рядка (за замовчуванням sys.argv[1:])

    Returns:
        Код виходу
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.handler(args)
    except (InputError, FileNotFoundError, ConstructionError, InstanceError, HypothesisError,
            SingularSystemError) as e:
        print(f"✗ Помилка вводу: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GuardRefusal as e:
        print(f"✗ Відмова запобіжника: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
