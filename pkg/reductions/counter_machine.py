"""
Двухсчетчиковые машины и их компиляция в протоколы с неупорядоченными данными.
Симуляция машины обнаружением нарушений: любая неверная симуляция уводит всех агентов в сток.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple, Union

from core.configuration import CanonicalConfiguration, DatumProfile
from core.errors import MachineError
from core.protocol import Guard, Output, Protocol, Transition, make_protocol, validate_protocol

logger = logging.getLogger(__name__)

COUNTERS = ("x", "y")
OPERATIONS = ("idle", "inc", "dec", "done", "zt", "eq0", "gt0")
ORIGINS = ("R", "other")

RESERVOIR = "R"
UNIQ = "Uniq"
SINK = "sink"

BOTH = (Guard.EQ, Guard.NEQ)


@dataclass(frozen=True)
class Inc:
    counter: str


@dataclass(frozen=True)
class Dec:
    counter: str


@dataclass(frozen=True)
class ZeroTest:
    """Переход на инструкцию target (с 1), если счетчик равен нулю, иначе на следующую"""
    counter: str
    target: int


@dataclass(frozen=True)
class Halt:
    pass


Instruction = Union[Inc, Dec, ZeroTest, Halt]


@dataclass(frozen=True)
class MachineTrace:
    """Результат симуляции машины"""
    halted: bool
    steps: int
    x: int
    y: int


@dataclass(frozen=True)
class CounterMachine:
    """Двухсчетчиковая машина: инструкции i_1..i_n, счетчики x и y начинают с нуля"""
    instructions: Tuple[Instruction, ...]

    @property
    def size(self) -> int:
        return len(self.instructions)

    def validate(self) -> List[str]:
        """Список нарушений; пустой для корректной машины"""
        problems = []
        if not self.instructions:
            return ["машина не содержит инструкций"]
        if not any(isinstance(i, Halt) for i in self.instructions):
            problems.append("нет инструкции halt")
        for index, instruction in enumerate(self.instructions, start=1):
            if isinstance(instruction, (Inc, Dec, ZeroTest)) and instruction.counter not in COUNTERS:
                problems.append(f"инструкция {index}: неизвестный счетчик {instruction.counter}")
            if isinstance(instruction, ZeroTest) and not 1 <= instruction.target <= self.size:
                problems.append(f"инструкция {index}: переход на несуществующую инструкцию {instruction.target}")
            if not isinstance(instruction, Halt) and index == self.size:
                problems.append(f"инструкция {index}: после последней инструкции нет следующей")
        return problems

    def simulate(self, max_steps: int) -> MachineTrace:
        """Выполнение не более max_steps инструкций; dec на нуле оставляет счетчик нулевым"""
        counters = {"x": 0, "y": 0}
        pc = 1
        for step in range(max_steps):
            instruction = self.instructions[pc - 1]
            if isinstance(instruction, Halt):
                return MachineTrace(True, step, counters["x"], counters["y"])
            if isinstance(instruction, Inc):
                counters[instruction.counter] += 1
                pc += 1
            elif isinstance(instruction, Dec):
                counters[instruction.counter] = max(0, counters[instruction.counter] - 1)
                pc += 1
            elif counters[instruction.counter] == 0:
                pc = instruction.target
            else:
                pc += 1
        halted = isinstance(self.instructions[pc - 1], Halt)
        return MachineTrace(halted, max_steps, counters["x"], counters["y"])


def make_machine(instructions: Iterable[Instruction]) -> CounterMachine:
    """
    Построение машины с проверкой

    Raises:
        MachineError: машина некорректна
    """
    machine = CounterMachine(tuple(instructions))
    problems = machine.validate()
    if problems:
        raise MachineError("; ".join(problems))
    return machine


class RoleKind(str, Enum):
    INSTRUCTION = "Instruction"
    INSTRUCTION_PRIMED = "InstructionPrimed"
    COUNTER = "Counter"
    COUNTER_CONTROL = "CounterControl"
    RESERVOIR = "Reservoir"
    UNIQ = "Uniq"
    SINK = "SinkBot"


@dataclass(frozen=True)
class Role:
    """Роль состояния: вид, параметры и происхождение агента (из R или нет)"""
    kind: RoleKind
    origin: str
    instruction: Optional[int] = None
    counter: Optional[str] = None
    operation: Optional[str] = None


@dataclass(frozen=True)
class CompiledProtocol:
    protocol: Protocol
    roles: Dict[str, Role] = field(hash=False)
    machine: CounterMachine

    def state(self, main: str, origin: str = "other") -> str:
        return lift(main, origin)

    def states_of_kind(self, kind: RoleKind) -> List[str]:
        return [q for q in self.protocol.states if self.roles[q].kind is kind]


# Имена состояний Q_main

def instruction_state(m: int, primed: bool = False) -> str:
    return f"i{m}'" if primed else f"i{m}"


def counter_state(c: str) -> str:
    return f"C_{c}"


def control_state(c: str, op: str) -> str:
    return f"cc_{c}.{op}"


def lift(main: str, origin: str) -> str:
    """Состояние Q = Q_main x {R, other}"""
    return f"{main}@{origin}"


def _main_roles(machine: CounterMachine) -> Dict[str, Tuple]:
    roles = {}
    for m in range(1, machine.size + 1):
        roles[instruction_state(m)] = (RoleKind.INSTRUCTION, m, None, None)
        roles[instruction_state(m, True)] = (RoleKind.INSTRUCTION_PRIMED, m, None, None)
    for c in COUNTERS:
        roles[counter_state(c)] = (RoleKind.COUNTER, None, c, None)
    for c in COUNTERS:
        for op in OPERATIONS:
            roles[control_state(c, op)] = (RoleKind.COUNTER_CONTROL, None, c, op)
    roles[RESERVOIR] = (RoleKind.RESERVOIR, None, None, None)
    roles[UNIQ] = (RoleKind.UNIQ, None, None, None)
    roles[SINK] = (RoleKind.SINK, None, None, None)
    return roles


def _simulation_rules(machine: CounterMachine) -> List[Tuple[str, str, Tuple[Guard, ...], str, str]]:
    """Переходы над Q_main в порядке семейств: нарушения, сток, затем симуляция"""
    main = list(_main_roles(machine))
    program = [instruction_state(m) for m in range(1, machine.size + 1)]
    program += [instruction_state(m, True) for m in range(1, machine.size + 1)]
    rules = []

    # Counter Colour Violation
    for c in COUNTERS:
        for op in OPERATIONS:
            rules.append((control_state(c, op), counter_state(c), (Guard.NEQ,), SINK, SINK))
    # Counter Control Violation
    for c in COUNTERS:
        for op in OPERATIONS:
            for other in OPERATIONS:
                rules.append((control_state(c, op), control_state(c, other), BOTH, SINK, SINK))
    # Control State Violation
    for q in program:
        for q2 in program:
            rules.append((q, q2, BOTH, SINK, SINK))
    # Convert To Sink
    for q in main:
        rules.append((SINK, q, BOTH, SINK, SINK))

    for m, instruction in enumerate(machine.instructions, start=1):
        current, primed = instruction_state(m), instruction_state(m, True)
        if isinstance(instruction, Halt):
            continue
        c = instruction.counter
        following = instruction_state(m + 1)
        if isinstance(instruction, (Inc, Dec)):
            op = "inc" if isinstance(instruction, Inc) else "dec"
            rules.append((current, control_state(c, "idle"), BOTH, primed, control_state(c, op)))
        else:
            rules.append((current, control_state(c, "idle"), BOTH, primed, control_state(c, "zt")))
            rules.append((primed, control_state(c, "eq0"), BOTH,
                          instruction_state(instruction.target), control_state(c, "idle")))
            rules.append((primed, control_state(c, "gt0"), BOTH, following, control_state(c, "idle")))

    # End Operation: для всех m и обоих счетчиков; последняя инструкция halt, i_{n+1} не существует
    for m in range(1, machine.size):
        for c in COUNTERS:
            rules.append((control_state(c, "done"), instruction_state(m, True), BOTH,
                          control_state(c, "idle"), instruction_state(m + 1)))

    for c in COUNTERS:
        # Increment / Decrement
        rules.append((control_state(c, "inc"), RESERVOIR, (Guard.EQ,), control_state(c, "done"), counter_state(c)))
        rules.append((control_state(c, "dec"), counter_state(c), (Guard.EQ,), control_state(c, "done"), RESERVOIR))
        # c=0: агент из Uniq заменяет управляющего счетчиком, тот уходит в резерв
        rules.append((control_state(c, "zt"), UNIQ, BOTH, RESERVOIR, control_state(c, "eq0")))
        # c>0
        rules.append((control_state(c, "zt"), counter_state(c), BOTH, control_state(c, "gt0"), counter_state(c)))
    return rules


def compile_2cm(machine: CounterMachine) -> CompiledProtocol:
    """
    Компиляция машины в протокол над Q_main x {R, other}

    Вторая компонента состояния никогда не меняется. Переход Input Violation
    ((p, other), (p', other) с условием = уводит обоих в сток) замещает любые
    другие переходы с условием = между состояниями с компонентой other.

    Raises:
        MachineError: машина некорректна
    """
    problems = machine.validate()
    if problems:
        raise MachineError("; ".join(problems))

    main_roles = _main_roles(machine)
    states = [lift(q, origin) for q in main_roles for origin in ORIGINS]
    roles = {
        lift(q, origin): Role(kind, origin, instruction, counter, op)
        for q, (kind, instruction, counter, op) in main_roles.items()
        for origin in ORIGINS
    }

    transitions = []
    for p1, p2 in ((a, b) for a in main_roles for b in main_roles):
        transitions.append(Transition(lift(p1, "other"), lift(p2, "other"), Guard.EQ,
                                      lift(SINK, "other"), lift(SINK, "other")))
    for q1, q2, guards, q3, q4 in _simulation_rules(machine):
        for guard in guards:
            for s1 in ORIGINS:
                for s2 in ORIGINS:
                    if guard is Guard.EQ and s1 == s2 == "other":
                        continue
                    transitions.append(Transition(lift(q1, s1), lift(q2, s2), guard,
                                                  lift(q3, s1), lift(q4, s2)))

    initial = {
        lift(RESERVOIR, "R"),
        lift(UNIQ, "other"),
        lift(control_state("x", "idle"), "other"),
        lift(control_state("y", "idle"), "other"),
        lift(instruction_state(1), "other"),
    }
    output = {
        q: Output.TOP if roles[q].kind is RoleKind.INSTRUCTION
        and isinstance(machine.instructions[roles[q].instruction - 1], Halt) else Output.BOT
        for q in states
    }

    protocol = make_protocol(states, transitions, initial, output)
    diagnostics = validate_protocol(protocol)
    if diagnostics:
        raise MachineError("; ".join(diagnostics))
    logger.info(f"Машина из {machine.size} инструкций скомпилирована: "
                f"{protocol.size} состояний, {len(protocol.transitions)} переходов")
    return CompiledProtocol(protocol, roles, machine)


def initial_config_2cm(cp: CompiledProtocol, uniq_data: int,
                       reservoir_per_datum: int) -> CanonicalConfiguration:
    """
    Начальная конфигурация без нарушений

    Агент в i_1 и по агенту в (cc_x, idle), (cc_y, idle) на попарно различных данных,
    uniq_data данных с одним агентом в Uniq каждое и reservoir_per_datum агентов
    в (R, R) на каждом данном.
    """
    if uniq_data < 1:
        raise ValueError("uniq_data должно быть не меньше 1")
    if reservoir_per_datum < 0:
        raise ValueError("reservoir_per_datum не может быть отрицательным")

    leaders = [lift(instruction_state(1), "other"),
               lift(control_state("x", "idle"), "other"),
               lift(control_state("y", "idle"), "other")]
    leaders += [lift(UNIQ, "other")] * uniq_data

    profiles = []
    for leader in leaders:
        counts = Counter({leader: 1})
        if reservoir_per_datum:
            counts[lift(RESERVOIR, "R")] = reservoir_per_datum
        profiles.append(DatumProfile.of(counts))
    return CanonicalConfiguration.from_profiles(profiles)


def has_input_violation(cp: CompiledProtocol, c: CanonicalConfiguration) -> bool:
    """На некотором данном не менее двух агентов с компонентой other"""
    for profile in c.profiles():
        others = sum(v for q, v in profile.counts if cp.roles[q].origin == "other")
        if others >= 2:
            return True
    return False


def is_violation_free(cp: CompiledProtocol, c: CanonicalConfiguration) -> bool:
    """Начальная конфигурация, в которой не включен ни один переход нарушения"""
    if has_input_violation(cp, c):
        return False
    leaders = [lift(instruction_state(1), "other"),
               lift(control_state("x", "idle"), "other"),
               lift(control_state("y", "idle"), "other")]
    return all(c.state_total(q) == 1 for q in leaders)
