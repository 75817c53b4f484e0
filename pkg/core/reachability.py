"""
Семантика шагов на канонических конфигурациях и обход достижимости.
Содержит вычисление Post*/Pre* и оракул справедливых исходов через нижние компоненты связности.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from core.configuration import CanonicalConfiguration, DatumProfile, is_consensus
from core.errors import BudgetExceededError, StepError
from core.protocol import Guard, Output, Protocol, Transition

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 5_000_000


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class Outcome(str, Enum):
    """Исход справедливых прогонов"""
    STABILISES_TOP = "StabilisesTop"
    STABILISES_BOT = "StabilisesBot"
    NEVER_STABILISES = "NeverStabilises"

    @classmethod
    def stabilises(cls, value: Output) -> "Outcome":
        return cls.STABILISES_TOP if value is Output.TOP else cls.STABILISES_BOT


@dataclass(frozen=True)
class StepInstance:
    """
    Шаг на канонической конфигурации.

    partner: профиль данного первого агента (q1 -> q3), в IO-протоколах наблюдаемого;
    actor: профиль данного второго агента (q2 -> q4).
    """
    transition_index: int
    actor: DatumProfile
    partner: DatumProfile
    same_datum: bool


def _enabled(transitions: Sequence[Transition], c: CanonicalConfiguration) -> Set[StepInstance]:
    steps = set()
    entries = c.entries
    for index, t in enumerate(transitions):
        if t.is_idle:
            continue
        if t.guard is Guard.EQ:
            for profile, _ in entries:
                needed_first = 2 if t.q1 == t.q2 else 1
                if profile.count(t.q1) >= needed_first and profile.count(t.q2) >= 1:
                    steps.add(StepInstance(index, profile, profile, True))
        else:
            for partner, partner_mult in entries:
                if partner.count(t.q1) < 1:
                    continue
                for actor, _ in entries:
                    if actor.count(t.q2) < 1:
                        continue
                    if actor == partner and partner_mult < 2:
                        continue
                    steps.add(StepInstance(index, actor, partner, False))
    return steps


def _why_disabled(transitions: Sequence[Transition], c: CanonicalConfiguration,
                  s: StepInstance) -> Optional[str]:
    if not 0 <= s.transition_index < len(transitions):
        return f"нет перехода с номером {s.transition_index}"
    t = transitions[s.transition_index]
    if s.same_datum != (t.guard is Guard.EQ):
        return f"флаг одного данного не соответствует условию {t.guard.value}"
    if c.multiplicity(s.actor) < 1 or c.multiplicity(s.partner) < 1:
        return "профиль шага отсутствует в конфигурации"
    if s.same_datum:
        if s.actor != s.partner:
            return "для условия = оба агента должны иметь одно данное"
        needed = 2 if t.q1 == t.q2 else 1
        if s.partner.count(t.q1) < needed or s.actor.count(t.q2) < 1:
            return f"в данном нет агентов в {t.q1} и {t.q2}"
        return None
    if s.actor == s.partner and c.multiplicity(s.actor) < 2:
        return "для условия != нужны два различных данных"
    if s.partner.count(t.q1) < 1:
        return f"нет агента в {t.q1}"
    if s.actor.count(t.q2) < 1:
        return f"нет агента в {t.q2}"
    return None


def _apply(t: Transition, c: CanonicalConfiguration, s: StepInstance) -> CanonicalConfiguration:
    if s.same_datum:
        moved = s.actor.moved([(t.q1, t.q3), (t.q2, t.q4)])
        return c.replace([s.actor], [moved])
    return c.replace(
        [s.partner, s.actor],
        [s.partner.moved([(t.q1, t.q3)]), s.actor.moved([(t.q2, t.q4)])],
    )


def enabled_steps(p: Protocol, c: CanonicalConfiguration) -> Set[StepInstance]:
    """Все неидлящие шаги, разрешенные в конфигурации c"""
    return _enabled(p.transitions, c)


def apply_step(p: Protocol, c: CanonicalConfiguration, s: StepInstance) -> CanonicalConfiguration:
    """
    Применение шага

    Raises:
        StepError: шаг не разрешен в c
    """
    reason = _why_disabled(p.transitions, c, s)
    if reason is not None:
        raise StepError(reason)
    return _apply(p.transitions[s.transition_index], c, s)


def reversed_transitions(p: Protocol) -> Tuple[Transition, ...]:
    return tuple(t.reversed() for t in p.transitions)


def one_step(transitions: Sequence[Transition], c: CanonicalConfiguration) -> Set[CanonicalConfiguration]:
    """Конфигурации, достижимые за один шаг по заданному списку переходов"""
    return {_apply(transitions[s.transition_index], c, s) for s in _enabled(transitions, c)}


def successors(p: Protocol, c: CanonicalConfiguration) -> Set[CanonicalConfiguration]:
    return one_step(p.transitions, c)


def predecessors(p: Protocol, c: CanonicalConfiguration) -> Set[CanonicalConfiguration]:
    return one_step(reversed_transitions(p), c)


class ReachabilityGraph:
    """Граф конфигураций, достижимых из корня в заданном направлении"""

    def __init__(self, root: CanonicalConfiguration, direction: Direction,
                 edges: Dict[CanonicalConfiguration, Tuple[CanonicalConfiguration, ...]]):
        self.root = root
        self.direction = direction
        self.edges = edges

    @property
    def nodes(self) -> FrozenSet[CanonicalConfiguration]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, c: CanonicalConfiguration) -> bool:
        return c in self.edges

    def successors(self, c: CanonicalConfiguration) -> Tuple[CanonicalConfiguration, ...]:
        return self.edges[c]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.edges)
        for source, targets in self.edges.items():
            for target in targets:
                graph.add_edge(source, target)
        return graph

    def bottom_components(self) -> List[FrozenSet[CanonicalConfiguration]]:
        """Нижние компоненты сильной связности (неявная петля у каждой вершины)"""
        condensed = nx.condensation(self.to_networkx())
        bottoms = []
        for node in condensed.nodes:
            if condensed.out_degree(node) == 0:
                bottoms.append(frozenset(condensed.nodes[node]["members"]))
        return sorted(bottoms, key=lambda members: min(c.sort_key() for c in members))

    def reaching(self, targets: Iterable[CanonicalConfiguration]) -> Set[CanonicalConfiguration]:
        """Вершины графа, из которых по ребрам графа достижима одна из целей"""
        reverse: Dict[CanonicalConfiguration, List[CanonicalConfiguration]] = {}
        for source, outgoing in self.edges.items():
            for target in outgoing:
                reverse.setdefault(target, []).append(source)

        marked = {c for c in targets if c in self.edges}
        queue = deque(marked)
        while queue:
            current = queue.popleft()
            for previous in reverse.get(current, ()):
                if previous not in marked:
                    marked.add(previous)
                    queue.append(previous)
        return marked


def explore(p: Protocol, c: CanonicalConfiguration, direction: Direction = Direction.FORWARD,
            node_budget: Optional[int] = None,
            cache: Optional[Dict] = None) -> ReachabilityGraph:
    """
    Обход в ширину пространства конфигураций с сигнатурой c

    Args:
        p: Протокол
        c: Корневая конфигурация
        direction: FORWARD для Post*, BACKWARD для Pre*
        node_budget: Максимальное число конфигураций
        cache: Общий кэш одношаговых переходов (ключ: направление и конфигурация)

    Raises:
        BudgetExceededError: граф больше бюджета
    """
    budget = node_budget or DEFAULT_NODE_BUDGET
    transitions = p.transitions if direction is Direction.FORWARD else reversed_transitions(p)

    edges: Dict[CanonicalConfiguration, Tuple[CanonicalConfiguration, ...]] = {}
    seen = {c}
    queue = deque([c])
    while queue:
        current = queue.popleft()
        key = (direction, current)
        if cache is not None and key in cache:
            outgoing = cache[key]
        else:
            outgoing = tuple(sorted(one_step(transitions, current), key=lambda x: x.sort_key()))
            if cache is not None:
                cache[key] = outgoing
        edges[current] = outgoing
        for target in outgoing:
            if target not in seen:
                seen.add(target)
                if len(seen) > budget:
                    logger.warning(f"Бюджет узлов {budget} исчерпан при обходе ({direction.value})")
                    raise BudgetExceededError(budget, len(edges), len(queue) + 1)
                queue.append(target)

    logger.debug(f"Обход {direction.value}: {len(edges)} конфигураций")
    return ReachabilityGraph(c, direction, edges)


def reach_set(p: Protocol, c: CanonicalConfiguration, direction: Direction = Direction.FORWARD,
              node_budget: Optional[int] = None) -> FrozenSet[CanonicalConfiguration]:
    """Post*(c) для FORWARD и Pre*(c) для BACKWARD"""
    return explore(p, c, direction, node_budget).nodes


@dataclass(frozen=True)
class BottomComponent:
    """Нижняя компонента: ее исходы, размер и представитель"""
    outcomes: FrozenSet[Outcome]
    size: int
    member: CanonicalConfiguration


def classify_component(p: Protocol, members: Iterable[CanonicalConfiguration]) -> FrozenSet[Outcome]:
    members = list(members)
    outcomes = set()
    for value in (Output.TOP, Output.BOT):
        if all(is_consensus(p, m, value) for m in members):
            outcomes.add(Outcome.stabilises(value))
    if not outcomes:
        outcomes.add(Outcome.NEVER_STABILISES)
    return frozenset(outcomes)


def fair_outcomes_report(p: Protocol, c: CanonicalConfiguration,
                         node_budget: Optional[int] = None,
                         graph: Optional[ReachabilityGraph] = None) -> List[BottomComponent]:
    """Все нижние компоненты, достижимые из c, с их исходами"""
    graph = graph or explore(p, c, Direction.FORWARD, node_budget)
    report = []
    for members in graph.bottom_components():
        representative = min(members, key=lambda m: m.sort_key())
        report.append(BottomComponent(classify_component(p, members), len(members), representative))
    return report


def fair_outcomes(p: Protocol, c: CanonicalConfiguration,
                  node_budget: Optional[int] = None) -> FrozenSet[Outcome]:
    """Множество исходов справедливых прогонов из c"""
    outcomes: Set[Outcome] = set()
    for component in fair_outcomes_report(p, c, node_budget):
        outcomes |= component.outcomes
    return frozenset(outcomes)


def has_unstable_fair_run(p: Protocol, c: CanonicalConfiguration, value: Output,
                          node_budget: Optional[int] = None) -> bool:
    """Некоторый справедливый прогон из c не стабилизируется к value"""
    stable = Outcome.stabilises(value)
    return any(stable not in component.outcomes for component in fair_outcomes_report(p, c, node_budget))
