"""
Модель популяционного протокола с неупорядоченными данными.
Состояния, охраняемые парные переходы, начальные состояния и выходное отображение.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, List, Tuple

logger = logging.getLogger(__name__)


class Guard(str, Enum):
    """Условие на данные двух взаимодействующих агентов"""
    EQ = "="
    NEQ = "!="


class Output(str, Enum):
    """Выходное значение состояния"""
    TOP = "top"
    BOT = "bot"

    @property
    def opposite(self) -> "Output":
        return Output.BOT if self is Output.TOP else Output.TOP


@dataclass(frozen=True)
class Transition:
    """
    Переход ((q1, q2), guard, (q3, q4)).

    Первый агент переходит из q1 в q3, второй из q2 в q4.
    В протоколах с немедленным наблюдением первый агент наблюдаемый: q3 = q1.
    """
    q1: str
    q2: str
    guard: Guard
    q3: str
    q4: str

    @property
    def is_immediate_observation(self) -> bool:
        return self.q1 == self.q3

    @property
    def is_idle(self) -> bool:
        return self.q1 == self.q3 and self.q2 == self.q4

    def reversed(self) -> "Transition":
        """Обратный переход (q3, q4) -> (q1, q2) с тем же условием"""
        return Transition(self.q3, self.q4, self.guard, self.q1, self.q2)

    def states(self) -> Tuple[str, str, str, str]:
        return (self.q1, self.q2, self.q3, self.q4)

    def __str__(self) -> str:
        return f"{self.q1}, {self.q2} -> {self.q3}, {self.q4} [{self.guard.value}]"


@dataclass(frozen=True)
class Protocol:
    """Протокол: состояния Q, переходы, начальные состояния I и выход O"""
    states: Tuple[str, ...]
    transitions: Tuple[Transition, ...]
    initial: FrozenSet[str]
    output: Dict[str, Output] = field(hash=False)

    @cached_property
    def state_index(self) -> Dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @property
    def size(self) -> int:
        """Размер протокола |P| = |Q|"""
        return len(self.states)

    def states_with_output(self, value: Output) -> List[str]:
        return [q for q in self.states if self.output.get(q) is value]

    def with_transitions(self, transitions) -> "Protocol":
        return Protocol(self.states, tuple(transitions), self.initial, dict(self.output))


def make_protocol(states, transitions, initial, output) -> Protocol:
    """
    Построение протокола с удалением повторяющихся переходов

    Args:
        states: Упорядоченный список состояний
        transitions: Итерируемое множество переходов
        initial: Начальные состояния
        output: Отображение состояние -> Output

    Returns:
        Протокол (без проверки корректности, см. validate_protocol)
    """
    unique = list(dict.fromkeys(transitions))
    return Protocol(tuple(states), tuple(unique), frozenset(initial), dict(output))


def validate_protocol(p: Protocol) -> List[str]:
    """
    Проверка инвариантов протокола

    Returns:
        Список диагностик, пустой для корректного протокола
    """
    diagnostics = []
    known = set(p.states)

    if len(known) != len(p.states):
        diagnostics.append("Список состояний содержит повторы")

    for index, t in enumerate(p.transitions):
        for q in t.states():
            if q not in known:
                diagnostics.append(f"Переход {index} ({t}) ссылается на неизвестное состояние {q}")

    if not p.initial:
        diagnostics.append("Множество начальных состояний пусто")
    for q in sorted(p.initial - known):
        diagnostics.append(f"Начальное состояние {q} не входит в Q")

    for q in p.states:
        if q not in p.output:
            diagnostics.append(f"Выход не определен для состояния {q}")
    for q in sorted(set(p.output) - known):
        diagnostics.append(f"Выход задан для неизвестного состояния {q}")

    if diagnostics:
        logger.debug(f"Протокол некорректен: {len(diagnostics)} нарушений")
    return diagnostics


def is_immediate_observation(p: Protocol) -> bool:
    """Каждый переход имеет вид (q1, q2, guard, q1, q4)"""
    return all(t.is_immediate_observation for t in p.transitions)
