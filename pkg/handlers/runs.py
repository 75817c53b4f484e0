"""
Обработчики команд для конкретных прогонов.
normalize-run, agents-core, data-core и trace.
"""

import logging

from core.errors import RunError
from core.protocol import Protocol
from handlers.common import load_protocol, load_run
from parsing.serializer import serialize_config, serialize_run
from runs.run import (
    ConcreteRun,
    end_configuration,
    externally_observed_data,
    observed_agents,
    split_trace_of,
    start_configuration,
    trace_of,
)
from runs.transforms import agents_core, data_core, normalize_run
from utils.config import Config
from utils.file_handler import save_text
from utils.logger import log_query
from utils.report import Report

logger = logging.getLogger(__name__)


def _run_report(command: str, p: Protocol, original: ConcreteRun, result: ConcreteRun, output) -> Report:
    text = serialize_run(result)
    saved = save_text(output, text)
    max_observed = max((len(observed_agents(result, d)) for d in result.data), default=0)
    return Report(
        command=command,
        verdict="valid",
        summary=f"{len(original.datum)} -> {len(result.datum)} agents, "
                f"{len(original.steps)} -> {len(result.steps)} steps",
        details={
            "agents": len(result.datum),
            "data": len(result.data),
            "steps": len(result.steps),
            "max_observed_agents_per_datum": max_observed,
            "externally_observed_data": len(externally_observed_data(result)),
            "start": serialize_config(start_configuration(result), inline=True),
            "end": serialize_config(end_configuration(p, result), inline=True),
            "saved_to": saved,
        },
        result=text,
    )


def normalize_run_command(args, config: Config) -> Report:
    protocol = load_protocol(args.protocol)
    run = load_run(args.run)
    log_query("normalize-run", f"{args.protocol}, {args.run}")
    return _run_report("normalize-run", protocol, run, normalize_run(protocol, run), args.output)


def agents_core_command(args, config: Config) -> Report:
    protocol = load_protocol(args.protocol)
    run = load_run(args.run)
    log_query("agents-core", f"{args.protocol}, {args.run}")
    return _run_report("agents-core", protocol, run, agents_core(protocol, run), args.output)


def data_core_command(args, config: Config) -> Report:
    """K по умолчанию |Q|^3"""
    protocol = load_protocol(args.protocol)
    run = load_run(args.run)
    k = args.k if args.k is not None else protocol.size ** 3
    log_query("data-core", f"{args.protocol}, {args.run}, K={k}")
    return _run_report("data-core", protocol, run, data_core(protocol, run, k), args.output)


def trace_command(args, config: Config) -> Report:
    """След данного или расщепленный след в конфигурации --at (с 1)"""
    protocol = load_protocol(args.protocol)
    run = load_run(args.run)
    log_query("trace", f"{args.protocol}, {args.run}, {args.datum}")
    if args.at is None:
        trace = trace_of(protocol, run, args.datum)
        entries = [f"{start}->{end}: {count}" for (start, end), count in trace.counts]
        kind = "trace"
    else:
        split = split_trace_of(protocol, run, args.datum, args.at)
        entries = [f"{start}->{middle}->{end}: {count}" for (start, middle, end), count in split.counts]
        kind = f"split trace at configuration {args.at}"
    if not entries:
        raise RunError(f"данное {args.datum} не имеет агентов")
    return Report(command="trace", verdict=kind, summary=f"datum {args.datum}",
                  details={"entries": entries})


def setup_runs_handlers(subparsers, parent):
    """Регистрация команд для прогонов"""
    for name, handler, help_text in (
        ("normalize-run", normalize_run_command, "Нормализация прогона"),
        ("agents-core", agents_core_command, "Сокращение числа агентов на данное"),
    ):
        parser = subparsers.add_parser(name, parents=[parent], help=help_text)
        parser.add_argument("protocol")
        parser.add_argument("run")
        parser.set_defaults(handler=handler)

    parser = subparsers.add_parser("data-core", parents=[parent], help="Сокращение числа данных")
    parser.add_argument("protocol")
    parser.add_argument("run")
    parser.add_argument("--k", type=int, help="Максимум агентов на данное (по умолчанию |Q|^3)")
    parser.set_defaults(handler=data_core_command)

    parser = subparsers.add_parser("trace", parents=[parent], help="След данного в прогоне")
    parser.add_argument("protocol")
    parser.add_argument("run")
    parser.add_argument("datum")
    parser.add_argument("--at", type=int, help="Номер конфигурации для расщепленного следа")
    parser.set_defaults(handler=trace_command)

    logger.debug("Команды для прогонов зарегистрированы")
