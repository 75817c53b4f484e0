"""
Обобщенные выражения достижимости (GRE).
Дерево выражений, рекурсивная проверка принадлежности и ограниченная проверка пустоты.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple, Union

from core.configuration import CanonicalConfiguration, enumerate_configurations
from core.errors import BudgetExceededError
from core.protocol import Output, Protocol
from core.reachability import Direction, explore
from logic.predicates import (
    IntervalPredicate,
    PredAnd,
    disjunction,
    eval_predicate,
    forall_absent,
    height,
    presence,
    width,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Atom:
    predicate: IntervalPredicate


@dataclass(frozen=True)
class GreUnion:
    left: "GreNode"
    right: "GreNode"


@dataclass(frozen=True)
class Complement:
    child: "GreNode"


@dataclass(frozen=True)
class PostStar:
    child: "GreNode"


@dataclass(frozen=True)
class PreStar:
    child: "GreNode"


GreNode = Union[Atom, GreUnion, Complement, PostStar, PreStar]


def length(e: GreNode) -> int:
    """Длина выражения: число операторов"""
    if isinstance(e, Atom):
        return 0
    if isinstance(e, GreUnion):
        return 1 + length(e.left) + length(e.right)
    return 1 + length(e.child)


def atoms(e: GreNode):
    if isinstance(e, Atom):
        return [e.predicate]
    if isinstance(e, GreUnion):
        return atoms(e.left) + atoms(e.right)
    return atoms(e.child)


def norm(e: GreNode) -> int:
    """Норма: максимум ширин и высот атомов"""
    return max((max(width(phi), height(phi)) for phi in atoms(e)), default=0)


def intersect(left: GreNode, right: GreNode) -> GreNode:
    """Пересечение через дополнение объединения дополнений"""
    return Complement(GreUnion(Complement(left), Complement(right)))


# Построители выражений для производных задач

def build_output_gre(p: Protocol, value: Output) -> GreNode:
    """Конфигурации консенсуса value: нет агентов в состояниях с другим выходом"""
    others = [q for q in p.states if p.output.get(q) is not value]
    return Atom(forall_absent(others))


def build_stable_gre(p: Protocol, value: Output) -> GreNode:
    """Stable_b = дополнение Pre*(дополнение Output_b)"""
    return Complement(PreStar(Complement(build_output_gre(p, value))))


def build_initial_predicate(p: Protocol, include_empty: bool = False) -> IntervalPredicate:
    """Все агенты в начальных состояниях; пустая конфигурация исключается по умолчанию"""
    phi = forall_absent(q for q in p.states if q not in p.initial)
    if include_empty:
        return phi
    return PredAnd(phi, disjunction(presence(q) for q in sorted(p.initial)))


def build_initial_gre(p: Protocol, include_empty: bool = False) -> GreNode:
    return Atom(build_initial_predicate(p, include_empty))


def build_unstable_gre(p: Protocol, value: Output) -> GreNode:
    """Конфигурации, из которых некоторый справедливый прогон не стабилизируется к value"""
    return PreStar(Complement(PreStar(build_stable_gre(p, value))))


def build_wellspec_gre(p: Protocol, include_empty: bool = False) -> GreNode:
    """E_ws: начальные конфигурации без единственного значения стабилизации"""
    return intersect(
        build_initial_gre(p, include_empty),
        intersect(build_unstable_gre(p, Output.TOP), build_unstable_gre(p, Output.BOT)),
    )


class GreEvaluator:
    """
    Проверка принадлежности конфигурации выражению

    Результаты запоминаются по паре (подвыражение, конфигурация) в пределах одного запроса.
    Для Pre*(F) строится прямое замыкание конфигурации, для Post*(F) обратное;
    ответ вычисляется сразу для всех вершин замыкания.
    """

    def __init__(self, protocol: Protocol, node_budget: Optional[int] = None):
        self.protocol = protocol
        self.node_budget = node_budget
        self._memo: Dict[Tuple[int, CanonicalConfiguration], bool] = {}
        self._step_cache: Dict = {}
        # ключи memo используют id узла, поэтому узлы удерживаются до конца запроса
        self._pinned: Dict[int, GreNode] = {}
        self.explored = 0

    def member(self, e: GreNode, c: CanonicalConfiguration) -> bool:
        key = (id(e), c)
        cached = self._memo.get(key)
        if cached is not None:
            return cached

        if isinstance(e, Atom):
            result = eval_predicate(e.predicate, c)
        elif isinstance(e, GreUnion):
            result = self.member(e.left, c) or self.member(e.right, c)
        elif isinstance(e, Complement):
            result = not self.member(e.child, c)
        elif isinstance(e, (PreStar, PostStar)):
            self._close_star(e, c)
            return self._memo[key]
        else:
            raise TypeError(f"Неизвестный узел выражения: {e!r}")

        self._remember(e, c, result)
        return result

    def _remember(self, e: GreNode, c: CanonicalConfiguration, value: bool):
        self._pinned[id(e)] = e
        self._memo[(id(e), c)] = value

    def _close_star(self, e: GreNode, c: CanonicalConfiguration):
        direction = Direction.FORWARD if isinstance(e, PreStar) else Direction.BACKWARD
        graph = explore(self.protocol, c, direction, self.node_budget, cache=self._step_cache)
        self.explored += len(graph)
        targets = [x for x in graph.nodes if self.member(e.child, x)]
        reaching = graph.reaching(targets)
        for x in graph.nodes:
            self._remember(e, x, x in reaching)


def member(p: Protocol, e: GreNode, c: CanonicalConfiguration,
           node_budget: Optional[int] = None) -> bool:
    """
    Принадлежность конфигурации множеству выражения

    Raises:
        BudgetExceededError: обход превысил бюджет узлов
    """
    return GreEvaluator(p, node_budget).member(e, c)


@dataclass(frozen=True)
class SearchBounds:
    """Ограничения перебора: число данных и агентов на данное"""
    max_data: int
    max_agents_per_datum: int

    def __post_init__(self):
        if self.max_data < 1 or self.max_agents_per_datum < 1:
            raise ValueError("Границы поиска должны быть не меньше 1")

    def __str__(self) -> str:
        return f"({self.max_data} data, {self.max_agents_per_datum} agents/datum)"


class VerdictKind(str, Enum):
    EMPTY = "Empty"
    NON_EMPTY = "NonEmpty"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Результат проверки пустоты"""
    kind: VerdictKind
    bounds: SearchBounds
    witness: Optional[CanonicalConfiguration] = None
    checked: int = 0
    reason: Optional[str] = None

    @property
    def is_empty(self) -> bool:
        return self.kind is VerdictKind.EMPTY

    @property
    def is_non_empty(self) -> bool:
        return self.kind is VerdictKind.NON_EMPTY


def emptiness(p: Protocol, e: GreNode, bounds: SearchBounds,
              node_budget: Optional[int] = None,
              include_empty: bool = True) -> Verdict:
    """
    Ограниченная проверка пустоты выражения

    Конфигурации перебираются по возрастанию числа агентов, затем числа данных;
    возвращается первая найденная конфигурация из множества выражения.
    Empty означает пустоту только в пределах bounds.
    """
    evaluator = GreEvaluator(p, node_budget)
    checked = 0
    logger.info(f"Проверка пустоты: длина выражения {length(e)}, границы {bounds}")
    try:
        for c in enumerate_configurations(p.states, bounds.max_data, bounds.max_agents_per_datum,
                                          include_empty=include_empty):
            checked += 1
            if evaluator.member(e, c):
                logger.info(f"Найден свидетель после {checked} конфигураций: {c}")
                return Verdict(VerdictKind.NON_EMPTY, bounds, witness=c, checked=checked)
    except BudgetExceededError as error:
        logger.warning(f"Проверка пустоты прервана: {error}")
        return Verdict(VerdictKind.INCONCLUSIVE, bounds, checked=checked, reason=str(error))

    logger.info(f"Выражение пусто в пределах {bounds}: проверено {checked} конфигураций")
    return Verdict(VerdictKind.EMPTY, bounds, checked=checked)
