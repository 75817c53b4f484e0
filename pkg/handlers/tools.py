"""
Служебные команды.
gen-2cm, validate, dot и self-test.
"""

import logging
import random

from core.configuration import initial_configurations
from core.generators import random_io_protocol
from core.protocol import Output, validate_protocol
from core.reachability import Direction, explore, has_unstable_fair_run
from handlers.common import (
    load_config,
    load_gre,
    load_machine,
    load_predicate,
    load_protocol,
    load_run,
    node_budget,
)
from logic.gre import GreEvaluator, build_unstable_gre
from logic.predicates import predicate_metrics
from parsing.serializer import serialize_config, serialize_protocol
from reductions.counter_machine import compile_2cm, initial_config_2cm
from runs.run import check_run
from utils.config import Config
from utils.dot_export import render_reachability_dot
from utils.file_handler import save_text
from utils.logger import log_query
from utils.report import Report, Status

logger = logging.getLogger(__name__)

KINDS = ("protocol", "config", "predicate", "gre", "run", "cm")


def gen_2cm_command(args, config: Config) -> Report:
    """Компиляция двухсчетчиковой машины в протокол"""
    machine = load_machine(args.machine)
    log_query("gen-2cm", f"{args.machine}, инструкций {machine.size}")
    compiled = compile_2cm(machine)
    text = serialize_protocol(compiled.protocol)
    saved = save_text(args.output, text)
    start = initial_config_2cm(compiled, args.uniq_data, args.reservoir)
    trace = machine.simulate(args.simulate_steps)
    return Report(
        command="gen-2cm",
        verdict="compiled",
        summary=f"{compiled.protocol.size} states, {len(compiled.protocol.transitions)} transitions",
        details={
            "instructions": machine.size,
            "initial_config": serialize_config(start, inline=True),
            "halts_within_steps": trace.halted,
            "saved_to": saved,
        },
        result=None if saved else text,
    )


def validate_command(args, config: Config) -> Report:
    """Разбор входного файла; для протоколов и прогонов дополнительно проверяются инварианты"""
    log_query("validate", f"{args.kind} {args.source}")
    details = {}
    problems = []
    if args.kind == "protocol":
        protocol = load_protocol(args.source)
        problems = validate_protocol(protocol)
        details = {"states": protocol.size, "transitions": len(protocol.transitions)}
    elif args.kind == "config":
        configuration = load_config(args.source)
        details = {"data": configuration.data_count, "agents": configuration.agent_count}
    elif args.kind == "predicate":
        w, h, size = predicate_metrics(load_predicate(args.source))
        details = {"width": w, "height": h, "size": size}
    elif args.kind == "gre":
        load_gre(args.source)
    elif args.kind == "cm":
        details = {"instructions": load_machine(args.source).size}
    else:
        run = load_run(args.source)
        details = {"agents": len(run.datum), "steps": len(run.steps)}
        if args.protocol:
            result = check_run(load_protocol(args.protocol), run)
            if not result.valid:
                where = f"шаг {result.step_index}: " if result.step_index is not None else ""
                problems = [f"{where}{result.reason}"]

    if problems:
        return Report(command="validate", status=Status.VIOLATED, verdict="invalid",
                      summary=problems[0], details={"problems": problems, **details})
    return Report(command="validate", verdict="valid", summary=f"{args.kind} is well-formed", details=details)


def dot_command(args, config: Config) -> Report:
    protocol = load_protocol(args.protocol)
    configuration = load_config(args.config, protocol)
    log_query("dot", f"{args.protocol}, {configuration}")
    graph = explore(protocol, configuration, Direction.FORWARD, node_budget(args, config))
    text = render_reachability_dot(protocol, graph, config.DOT_MAX_NODES)
    saved = save_text(args.output, text)
    return Report(command="dot", verdict="rendered", summary=f"{len(graph)} configurations",
                  details={"saved_to": saved}, result=None if saved else text)


def self_test_command(args, config: Config) -> Report:
    """
    Сравнение принадлежности Pre*(compl Pre*(Stable_b)) с анализом нижних компонент
    на случайных протоколах и всех начальных конфигурациях до 2 данных по 2 агента
    """
    rng = random.Random(args.seed)
    log_query("self-test", f"seed={args.seed}, протоколов {args.protocols}")
    budget = node_budget(args, config)
    mismatches = []
    checked = 0
    for index in range(args.protocols):
        protocol = random_io_protocol(rng, rng.randint(2, 4))
        evaluator = GreEvaluator(protocol, budget)
        expressions = {value: build_unstable_gre(protocol, value) for value in (Output.TOP, Output.BOT)}
        for c in initial_configurations(protocol, 2, 2):
            for value, expression in expressions.items():
                checked += 1
                expected = has_unstable_fair_run(protocol, c, value, budget)
                if evaluator.member(expression, c) != expected:
                    mismatches.append(f"protocol {index}, {serialize_config(c, inline=True)}, {value.value}")

    status = Status.VIOLATED if mismatches else Status.DEFINITIVE
    logger.info(f"Самопроверка: {checked} сравнений, расхождений {len(mismatches)}")
    return Report(command="self-test", status=status,
                  verdict="mismatch" if mismatches else "agree",
                  summary=f"{checked} comparisons, {len(mismatches)} mismatches",
                  checked=checked, details={"mismatches": mismatches, "seed": args.seed})


def setup_tools_handlers(subparsers, parent):
    """Регистрация служебных команд"""
    parser = subparsers.add_parser("gen-2cm", parents=[parent], help="Компиляция двухсчетчиковой машины")
    parser.add_argument("machine")
    parser.add_argument("--uniq-data", type=int, default=1, help="Число данных с агентом в Uniq")
    parser.add_argument("--reservoir", type=int, default=1, help="Агентов резерва на данное")
    parser.add_argument("--simulate-steps", type=int, default=1000, help="Шагов симуляции машины")
    parser.set_defaults(handler=gen_2cm_command)

    parser = subparsers.add_parser("validate", parents=[parent], help="Проверка входного файла")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("source")
    parser.add_argument("--protocol", help="Протокол для воспроизведения прогона")
    parser.set_defaults(handler=validate_command)

    parser = subparsers.add_parser("dot", parents=[parent], help="Граф достижимости в формате DOT")
    parser.add_argument("protocol")
    parser.add_argument("config")
    parser.set_defaults(handler=dot_command)

    parser = subparsers.add_parser("self-test", parents=[parent], help="Сверка с анализом компонент")
    parser.add_argument("--seed", type=int, default=0, help="Зерно генератора")
    parser.add_argument("--protocols", type=int, default=20, help="Число случайных протоколов")
    parser.set_defaults(handler=self_test_command)

    logger.debug("Служебные команды зарегистрированы")
