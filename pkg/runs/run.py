"""
Конкретные прогоны с идентифицированными агентами.
Проверка корректности, следы, расщепленные следы и структура наблюдений.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from core.configuration import CanonicalConfiguration
from core.errors import ProtocolError, RunError
from core.protocol import Guard, Protocol, is_immediate_observation

logger = logging.getLogger(__name__)

FRESH_PREFIX = "~"


def natural_key(name: str) -> Tuple:
    """Ключ сортировки идентификаторов: a2 раньше a10"""
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name))


@dataclass(frozen=True)
class RunStep:
    """Шаг прогона: actor переходит по переходу transition, наблюдая агента observed"""
    transition: int
    actor: str
    observed: str


@dataclass(frozen=True)
class ConcreteRun:
    """
    Прогон IO-протокола: данные агентов, начальные состояния и список шагов.

    Конфигурации нумеруются с 1: i-я конфигурация стоит перед i-м шагом,
    последняя имеет номер len(steps) + 1.
    """
    datum: Dict[str, str] = field(hash=False)
    start: Dict[str, str] = field(hash=False)
    steps: Tuple[RunStep, ...] = ()

    @property
    def agents(self) -> List[str]:
        return sorted(self.datum, key=natural_key)

    @property
    def data(self) -> List[str]:
        return sorted(set(self.datum.values()), key=natural_key)

    def agents_of(self, d: str) -> List[str]:
        return [a for a in self.agents if self.datum[a] == d]

    def with_steps(self, steps: Iterable[RunStep]) -> "ConcreteRun":
        return ConcreteRun(dict(self.datum), dict(self.start), tuple(steps))


@dataclass(frozen=True)
class RunCheck:
    """Результат проверки прогона"""
    valid: bool
    end: Optional[Dict[str, str]] = field(default=None, hash=False)
    step_index: Optional[int] = None
    reason: Optional[str] = None


def _require_io(p: Protocol):
    if not is_immediate_observation(p):
        raise ProtocolError("Прогоны поддерживаются только для протоколов с немедленным наблюдением")


def _step_problem(p: Protocol, r: ConcreteRun, state: Dict[str, str], step: RunStep) -> Optional[str]:
    if not 0 <= step.transition < len(p.transitions):
        return f"нет перехода с номером {step.transition}"
    for agent in (step.actor, step.observed):
        if agent not in r.datum:
            return f"неизвестный агент {agent}"
    if step.actor == step.observed:
        return f"агент {step.actor} наблюдает сам себя"

    t = p.transitions[step.transition]
    if state[step.observed] != t.q1:
        return f"наблюдаемый {step.observed} в {state[step.observed]}, а не в {t.q1}"
    if state[step.actor] != t.q2:
        return f"агент {step.actor} в {state[step.actor]}, а не в {t.q2}"
    same = r.datum[step.actor] == r.datum[step.observed]
    if t.guard is Guard.EQ and not same:
        return "условие = нарушено: данные агентов различны"
    if t.guard is Guard.NEQ and same:
        return "условие != нарушено: данные агентов совпадают"
    return None


def check_run(p: Protocol, r: ConcreteRun) -> RunCheck:
    """
    Воспроизведение прогона

    Returns:
        RunCheck с конечной конфигурацией или с номером (с 1) первого некорректного шага
    """
    _require_io(p)
    for agent in r.datum:
        if agent not in r.start:
            return RunCheck(False, step_index=None, reason=f"нет начального состояния агента {agent}")
        if r.start[agent] not in p.state_index:
            return RunCheck(False, step_index=None, reason=f"неизвестное состояние {r.start[agent]}")
    state = dict(r.start)
    for index, step in enumerate(r.steps, start=1):
        problem = _step_problem(p, r, state, step)
        if problem is not None:
            logger.debug(f"Прогон некорректен на шаге {index}: {problem}")
            return RunCheck(False, step_index=index, reason=problem)
        state[step.actor] = p.transitions[step.transition].q4
    return RunCheck(True, end=state)


def timeline(p: Protocol, r: ConcreteRun) -> List[Dict[str, str]]:
    """
    Состояния всех агентов во всех конфигурациях (индекс списка с 0)

    Raises:
        RunError: прогон некорректен
    """
    _require_io(p)
    result = check_run(p, r)
    if not result.valid:
        raise RunError(result.reason, result.step_index)
    states = [dict(r.start)]
    for step in r.steps:
        current = dict(states[-1])
        current[step.actor] = p.transitions[step.transition].q4
        states.append(current)
    return states


def end_states(p: Protocol, r: ConcreteRun) -> Dict[str, str]:
    return timeline(p, r)[-1]


def start_configuration(r: ConcreteRun) -> CanonicalConfiguration:
    return CanonicalConfiguration.from_agents({a: (r.datum[a], r.start[a]) for a in r.datum})


def end_configuration(p: Protocol, r: ConcreteRun) -> CanonicalConfiguration:
    end = end_states(p, r)
    return CanonicalConfiguration.from_agents({a: (r.datum[a], end[a]) for a in r.datum})


@dataclass(frozen=True)
class Trace:
    """След данного: число агентов по парам (начальное, конечное состояние)"""
    counts: Tuple[Tuple[Tuple[str, str], int], ...]

    @classmethod
    def of(cls, counter: Counter) -> "Trace":
        return cls(tuple(sorted((k, v) for k, v in counter.items() if v > 0)))

    def get(self, start: str, end: str) -> int:
        return dict(self.counts).get((start, end), 0)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.counts)


@dataclass(frozen=True)
class SplitTrace:
    """Расщепленный след: число агентов по тройкам (начальное, промежуточное, конечное)"""
    counts: Tuple[Tuple[Tuple[str, str, str], int], ...]

    @classmethod
    def of(cls, counter: Counter) -> "SplitTrace":
        return cls(tuple(sorted((k, v) for k, v in counter.items() if v > 0)))

    def get(self, start: str, middle: str, end: str) -> int:
        return dict(self.counts).get((start, middle, end), 0)

    def marginal(self) -> Trace:
        counter: Counter = Counter()
        for (start, _, end), value in self.counts:
            counter[(start, end)] += value
        return Trace.of(counter)


def _trace_from(r: ConcreteRun, d: str, first: Dict[str, str], last: Dict[str, str]) -> Trace:
    return Trace.of(Counter((first[a], last[a]) for a in r.agents_of(d)))


def trace_of(p: Protocol, r: ConcreteRun, d: str, states: Optional[List[Dict[str, str]]] = None) -> Trace:
    """След данного d в прогоне r"""
    if d not in set(r.datum.values()):
        raise RunError(f"данное {d} не встречается в прогоне")
    states = states or timeline(p, r)
    return _trace_from(r, d, states[0], states[-1])


def split_trace_of(p: Protocol, r: ConcreteRun, d: str, i: int,
                   states: Optional[List[Dict[str, str]]] = None) -> SplitTrace:
    """Расщепленный след данного d в i-й конфигурации (1 <= i <= len(steps) + 1)"""
    if d not in set(r.datum.values()):
        raise RunError(f"данное {d} не встречается в прогоне")
    if not 1 <= i <= len(r.steps) + 1:
        raise RunError(f"номер конфигурации {i} вне диапазона 1..{len(r.steps) + 1}")
    states = states or timeline(p, r)
    middle = states[i - 1]
    return SplitTrace.of(Counter(
        (states[0][a], middle[a], states[-1][a]) for a in r.agents_of(d)
    ))


def realised_triples(p: Protocol, r: ConcreteRun) -> Set[Tuple[str, str, str]]:
    """Множество троек (данное, начальное, конечное), реализованных агентами"""
    states = timeline(p, r)
    return {(r.datum[a], states[0][a], states[-1][a]) for a in r.datum}


def realised_traces(p: Protocol, r: ConcreteRun) -> Set[Trace]:
    states = timeline(p, r)
    return {_trace_from(r, d, states[0], states[-1]) for d in r.data}


def trace_multiset(p: Protocol, r: ConcreteRun) -> Counter:
    states = timeline(p, r)
    return Counter(_trace_from(r, d, states[0], states[-1]) for d in r.data)


def observed_agents(r: ConcreteRun, d: str) -> FrozenSet[str]:
    """Агенты данного d, которые наблюдаются хотя бы в одном шаге"""
    return frozenset(s.observed for s in r.steps if r.datum[s.observed] == d)


def externally_observed_data(r: ConcreteRun) -> FrozenSet[str]:
    """Данные, агентов которых наблюдают агенты других данных"""
    return frozenset(
        r.datum[s.observed] for s in r.steps if r.datum[s.observed] != r.datum[s.actor]
    )


def internally_observed(r: ConcreteRun, d: str) -> bool:
    return any(r.datum[s.observed] == d and r.datum[s.actor] == d for s in r.steps)


def prefix(r: ConcreteRun, i: int) -> ConcreteRun:
    """Прогон до i-й конфигурации"""
    return r.with_steps(r.steps[:i - 1])


def suffix(p: Protocol, r: ConcreteRun, i: int) -> ConcreteRun:
    """Прогон от i-й конфигурации до конца"""
    states = timeline(p, r)
    return ConcreteRun(dict(r.datum), dict(states[i - 1]), r.steps[i - 1:])


def fresh_names(taken: Iterable[str], count: int, letter: str) -> List[str]:
    """count новых идентификаторов из зарезервированного пространства ~<letter>N"""
    used = set(taken)
    names = []
    index = 1
    while len(names) < count:
        candidate = f"{FRESH_PREFIX}{letter}{index}"
        if candidate not in used:
            names.append(candidate)
            used.add(candidate)
        index += 1
    return names
