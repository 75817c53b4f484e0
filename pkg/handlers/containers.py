"""
Обработчики команд абстракции контейнеров и граничных функций.
container, pred-of-container и bounds.
"""

import logging

from handlers.common import load_config, load_gre, load_protocol
from logic.bounds import bound_report, poly1, poly2
from logic.containers import container_of, container_to_predicate
from logic.predicates import predicate_metrics
from parsing.serializer import serialize_predicate
from utils.config import Config
from utils.logger import log_query
from utils.report import Report

logger = logging.getLogger(__name__)


def container_command(args, config: Config) -> Report:
    """(n, M)-контейнер конфигурации над состояниями протокола"""
    protocol = load_protocol(args.protocol)
    configuration = load_config(args.config, protocol)
    log_query("container", f"{args.protocol}, n={args.n}, M={args.m}")
    cont = container_of(configuration, args.n, args.m, protocol.states)
    entries = [f"{box}: {count}" for box, count in cont.counts]
    return Report(command="container", verdict=str(cont),
                  summary=f"({args.n}, {args.m})-container with {len(entries)} non-zero boxes",
                  details={"boxes": entries})


def pred_of_container_command(args, config: Config) -> Report:
    """Предикат класса эквивалентности контейнера конфигурации"""
    protocol = load_protocol(args.protocol)
    configuration = load_config(args.config, protocol)
    log_query("pred-of-container", f"{args.protocol}, n={args.n}, M={args.m}")
    phi = container_to_predicate(container_of(configuration, args.n, args.m, protocol.states))
    w, h, size = predicate_metrics(phi)
    text = serialize_predicate(phi)
    return Report(command="pred-of-container", verdict="predicate",
                  summary=f"width {w}, height {h}, size {size}",
                  details={"width": w, "height": h, "size": size}, result=text + "\n")


def bounds_command(args, config: Config) -> Report:
    """Значения f, g, alpha, beta и оценки свидетеля"""
    protocol = load_protocol(args.protocol)
    expression = load_gre(args.gre)
    log_query("bounds", f"{args.protocol}, n={args.n}, M={args.m}")
    report = bound_report(protocol, expression, args.n, args.m, config.MAX_BOUND_BITS)
    beta = str(report.beta) if report.beta is not None else f"{report.beta_base}^{report.beta_exponent}"
    s = report.protocol_size
    return Report(
        command="bounds",
        verdict="computed",
        summary=f"|P|={s}, |E|={report.expression_length}, ||E||={report.expression_norm}",
        details={
            "n": report.n,
            "M": report.m,
            "f": str(report.f_value),
            "g": str(report.g_value),
            "alpha": str(report.alpha),
            "beta": beta,
            "poly1": str(poly1(s)),
            "poly2": str(poly2(s)),
            "witness_agent_bound": str(report.witness_agent_bound),
        },
    )


def setup_containers_handlers(subparsers, parent):
    """Регистрация команд абстракции"""
    for name, handler, help_text in (
        ("container", container_command, "Контейнер конфигурации"),
        ("pred-of-container", pred_of_container_command, "Предикат контейнера конфигурации"),
    ):
        parser = subparsers.add_parser(name, parents=[parent], help=help_text)
        parser.add_argument("protocol")
        parser.add_argument("config")
        parser.add_argument("--n", type=int, default=1, help="Порог коробок")
        parser.add_argument("--m", type=int, default=1, help="Порог числа данных")
        parser.set_defaults(handler=handler)

    parser = subparsers.add_parser("bounds", parents=[parent], help="Граничные функции")
    parser.add_argument("protocol")
    parser.add_argument("gre")
    parser.add_argument("--n", type=int, default=1, help="Порог коробок")
    parser.add_argument("--m", type=int, default=1, help="Порог числа данных")
    parser.set_defaults(handler=bounds_command)

    logger.debug("Команды абстракции зарегистрированы")
