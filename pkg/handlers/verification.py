"""
Обработчики команд верификации.
member, emptiness, well-specified, correct, set-reach, home-space и fair-outcomes.
"""

import logging

from core.errors import BudgetExceededError
from core.reachability import fair_outcomes_report
from handlers.common import (
    include_empty,
    load_config,
    load_gre,
    load_predicate,
    load_protocol,
    node_budget,
    search_bounds,
)
from logic.gre import VerdictKind, emptiness, member
from logic.verification import (
    check_correctness,
    check_home_space,
    check_set_reachability,
    check_well_specified,
)
from parsing.serializer import serialize_config
from utils.config import Config
from utils.logger import log_query
from utils.report import BoundsModel, Report, Status, verdict_report

logger = logging.getLogger(__name__)


def member_command(args, config: Config) -> Report:
    """Принадлежность конфигурации множеству выражения"""
    protocol = load_protocol(args.protocol)
    expression = load_gre(args.gre)
    configuration = load_config(args.config, protocol)
    log_query("member", f"{args.protocol}, {configuration}")

    try:
        value = member(protocol, expression, configuration, node_budget(args, config))
    except BudgetExceededError as error:
        return Report(command="member", status=Status.INCONCLUSIVE, verdict="Inconclusive",
                      summary=str(error))
    return Report(command="member", verdict=str(value).lower(),
                  summary=f"{'in' if value else 'not in'} the expression set",
                  witness=serialize_config(configuration, inline=True))


def emptiness_command(args, config: Config) -> Report:
    protocol = load_protocol(args.protocol)
    expression = load_gre(args.gre)
    bounds = search_bounds(args, config)
    log_query("emptiness", f"{args.protocol}, границы {bounds}")
    verdict = emptiness(protocol, expression, bounds, node_budget(args, config))
    return verdict_report("emptiness", verdict)


def well_specified_command(args, config: Config) -> Report:
    protocol = load_protocol(args.protocol)
    bounds = search_bounds(args, config)
    log_query("well-specified", f"{args.protocol}, границы {bounds}")
    verdict = check_well_specified(protocol, bounds, node_budget(args, config), include_empty(args, config))
    return verdict_report("well-specified", verdict, "E_ws")


def correct_command(args, config: Config) -> Report:
    """Корректность по обеим ветвям; контрпример берется из первой непустой ветви"""
    protocol = load_protocol(args.protocol)
    phi = load_predicate(args.predicate)
    bounds = search_bounds(args, config)
    log_query("correct", f"{args.protocol}, {args.predicate}, границы {bounds}")
    result = check_correctness(protocol, phi, bounds, node_budget(args, config), include_empty(args, config))

    status = {
        VerdictKind.EMPTY: Status.DEFINITIVE,
        VerdictKind.NON_EMPTY: Status.VIOLATED,
        VerdictKind.INCONCLUSIVE: Status.INCONCLUSIVE,
    }[result.kind]
    witness = None
    summary = f"Empty(E_correct) up to bounds {bounds}"
    for value, verdict in result.branches.items():
        if verdict.kind is VerdictKind.NON_EMPTY:
            witness = serialize_config(verdict.witness, inline=True)
            summary = f"NonEmpty(E_correct): initial configuration does not stabilise to {value.value}"
            break
        if verdict.kind is VerdictKind.INCONCLUSIVE:
            summary = f"Inconclusive(E_correct): {verdict.reason}"

    return Report(
        command="correct",
        status=status,
        verdict=result.kind.value,
        summary=summary,
        bounds=BoundsModel.of(bounds),
        witness=witness,
        checked=sum(v.checked for v in result.branches.values()),
        details={f"branch_{value.value}": verdict.kind.value for value, verdict in result.branches.items()},
    )


def set_reach_command(args, config: Config) -> Report:
    protocol = load_protocol(args.protocol)
    source, target = load_gre(args.source), load_gre(args.target)
    bounds = search_bounds(args, config)
    log_query("set-reach", f"{args.protocol}, границы {bounds}")
    verdict = check_set_reachability(protocol, source, target, bounds, node_budget(args, config))
    return verdict_report("set-reach", verdict, "E1 ∩ Pre*(E2)")


def home_space_command(args, config: Config) -> Report:
    protocol = load_protocol(args.protocol)
    home = load_gre(args.home)
    initial = load_gre(args.initial) if args.initial else None
    bounds = search_bounds(args, config)
    log_query("home-space", f"{args.protocol}, границы {bounds}")
    verdict = check_home_space(protocol, home, bounds, node_budget(args, config),
                               include_empty(args, config), initial)
    return verdict_report("home-space", verdict, "Post*(I) ∩ compl(Pre*(H))")


def fair_outcomes_command(args, config: Config) -> Report:
    """Исходы справедливых прогонов: по строке на нижнюю компоненту"""
    protocol = load_protocol(args.protocol)
    configuration = load_config(args.config, protocol)
    log_query("fair-outcomes", f"{args.protocol}, {configuration}")
    try:
        components = fair_outcomes_report(protocol, configuration, node_budget(args, config))
    except BudgetExceededError as error:
        return Report(command="fair-outcomes", status=Status.INCONCLUSIVE, verdict="Inconclusive",
                      summary=str(error))

    outcomes = sorted({o.value for component in components for o in component.outcomes})
    lines = [
        f"{'/'.join(sorted(o.value for o in component.outcomes))} size={component.size} "
        f"member={serialize_config(component.member, inline=True) or '{}'}"
        for component in components
    ]
    return Report(
        command="fair-outcomes",
        verdict=", ".join(outcomes),
        summary=f"{len(components)} bottom components",
        witness=serialize_config(configuration, inline=True),
        details={"outcomes": outcomes, "bottom_components": len(components)},
        result="\n".join(lines),
    )


def setup_verification_handlers(subparsers, parent):
    """Регистрация команд верификации"""
    parser = subparsers.add_parser("member", parents=[parent], help="Принадлежность конфигурации выражению")
    parser.add_argument("protocol")
    parser.add_argument("gre")
    parser.add_argument("config")
    parser.set_defaults(handler=member_command)

    parser = subparsers.add_parser("emptiness", parents=[parent], help="Ограниченная проверка пустоты")
    parser.add_argument("protocol")
    parser.add_argument("gre")
    parser.set_defaults(handler=emptiness_command)

    parser = subparsers.add_parser("well-specified", parents=[parent], help="Корректная определенность")
    parser.add_argument("protocol")
    parser.set_defaults(handler=well_specified_command)

    parser = subparsers.add_parser("correct", parents=[parent], help="Вычисляет ли протокол предикат")
    parser.add_argument("protocol")
    parser.add_argument("predicate")
    parser.set_defaults(handler=correct_command)

    parser = subparsers.add_parser("set-reach", parents=[parent], help="Достижимость множества из множества")
    parser.add_argument("protocol")
    parser.add_argument("source")
    parser.add_argument("target")
    parser.set_defaults(handler=set_reach_command)

    parser = subparsers.add_parser("home-space", parents=[parent], help="Домашнее пространство")
    parser.add_argument("protocol")
    parser.add_argument("home")
    parser.add_argument("--initial", help="Выражение для подмножества начальных конфигураций")
    parser.set_defaults(handler=home_space_command)

    parser = subparsers.add_parser("fair-outcomes", parents=[parent], help="Исходы справедливых прогонов")
    parser.add_argument("protocol")
    parser.add_argument("config")
    parser.set_defaults(handler=fair_outcomes_command)

    logger.debug("Команды верификации зарегистрированы")
