"""
Интервальные предикаты над состояниями.
Представление, метрики (ширина, высота, размер) и точное вычисление на конфигурациях.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms import bipartite

from core.configuration import CanonicalConfiguration, DatumProfile

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Interval:
    """Отрезок [lower, upper]; upper = None означает +бесконечность"""
    lower: int = 0
    upper: Optional[int] = None

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("Нижняя граница интервала должна быть неотрицательной")
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f"Пустой интервал [{self.lower}, {self.upper}]")

    def contains(self, value: int) -> bool:
        return self.lower <= value and (self.upper is None or value <= self.upper)

    @property
    def is_unbounded(self) -> bool:
        return self.upper is None

    @property
    def is_trivial(self) -> bool:
        return self.lower == 0 and self.upper is None

    def finite_bounds(self) -> List[int]:
        return [self.lower] if self.upper is None else [self.lower, self.upper]

    def complement(self) -> List["Interval"]:
        """Дополнение в натуральных числах как список интервалов"""
        parts = []
        if self.lower > 0:
            parts.append(Interval(0, self.lower - 1))
        if self.upper is not None:
            parts.append(Interval(self.upper + 1, None))
        return parts

    def __str__(self) -> str:
        upper = "inf" if self.upper is None else str(self.upper)
        return f"[{self.lower},{upper}]"


@dataclass(frozen=True)
class SimpleIntervalPredicate:
    """
    Простой интервальный предикат: существуют попарно различные данные x_1..x_m,
    такие что #(q, x_j) лежит в заданном интервале для каждой ограниченной пары (q, j).

    Неупомянутые пары (q, j) не ограничены.
    """
    width: int
    bounds: Tuple[Tuple[str, int, Interval], ...] = ()
    variables: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("Ширина предиката должна быть неотрицательной")
        for state, j, _ in self.bounds:
            if not 0 <= j < self.width:
                raise ValueError(f"Переменная {j} вне диапазона 0..{self.width - 1} (состояние {state})")

    @classmethod
    def build(cls, width: int, bounds: Mapping[Tuple[str, int], Interval],
              variables: Optional[Sequence[str]] = None) -> "SimpleIntervalPredicate":
        """Построение из словаря (состояние, переменная) -> интервал, тривиальные интервалы опускаются"""
        items = tuple(sorted((q, j, i) for (q, j), i in bounds.items() if not i.is_trivial))
        names = tuple(variables) if variables else tuple(f"x{j + 1}" for j in range(width))
        return cls(width, items, names)

    @property
    def scope(self) -> FrozenSet[str]:
        """
        Ограниченные состояния I. Состояние, у которого все интервалы тривиальны ([0, inf]),
        ничего не ограничивает: build его опускает, и в scope и size оно не входит.
        """
        return frozenset(q for q, _, _ in self.bounds)

    @property
    def height(self) -> int:
        values = [v for _, _, interval in self.bounds for v in interval.finite_bounds()]
        return max(values, default=0)

    def column(self, j: int) -> List[Tuple[str, Interval]]:
        return [(q, interval) for q, k, interval in self.bounds if k == j]

    @cached_property
    def columns(self) -> Tuple[Tuple[Tuple[str, Interval], ...], ...]:
        return tuple(tuple(self.column(j)) for j in range(self.width))

    def size(self) -> int:
        """|S| * m * ceil(log2(h+1)), логарифмический множитель не меньше 1"""
        return len(self.scope) * self.width * max(1, self.height.bit_length())


@dataclass(frozen=True)
class PredNot:
    child: "IntervalPredicate"


@dataclass(frozen=True)
class PredAnd:
    left: "IntervalPredicate"
    right: "IntervalPredicate"


@dataclass(frozen=True)
class PredOr:
    left: "IntervalPredicate"
    right: "IntervalPredicate"


IntervalPredicate = Union[SimpleIntervalPredicate, PredNot, PredAnd, PredOr]

TRUE = SimpleIntervalPredicate(0)
FALSE = PredNot(TRUE)


def _column_accepts(column: Sequence[Tuple[str, Interval]], profile: Optional[DatumProfile]) -> bool:
    for state, interval in column:
        value = profile.count(state) if profile is not None else 0
        if not interval.contains(value):
            return False
    return True


def eval_simple(psi: SimpleIntervalPredicate, c: CanonicalConfiguration) -> bool:
    """
    Вычисление простого предиката

    Переменные пробегают все данные. Неприсутствующее данное имеет нулевой профиль,
    таких данных бесконечно много, поэтому переменная, допускающая нулевой профиль,
    всегда выполнима. Остальные переменные сопоставляются присутствующим данным
    через максимальное паросочетание.
    """
    columns = psi.columns
    demanding = [j for j, column in enumerate(columns) if not _column_accepts(column, None)]
    if not demanding:
        return True
    if len(demanding) > c.data_count:
        return False

    # одинаковые столбцы: паросочетание сводится к подсчету подходящих данных
    first = columns[demanding[0]]
    if all(columns[j] == first for j in demanding):
        matching_data = sum(multiplicity for profile, multiplicity in c.entries if _column_accepts(first, profile))
        return matching_data >= len(demanding)

    graph = nx.Graph()
    variable_nodes = [("var", j) for j in demanding]
    graph.add_nodes_from(variable_nodes, bipartite=0)
    for profile, multiplicity in c.entries:
        compatible = [j for j in demanding if _column_accepts(columns[j], profile)]
        if not compatible:
            continue
        # копий профиля больше числа переменных не требуется
        for copy in range(min(multiplicity, len(demanding))):
            datum_node = ("datum", profile, copy)
            graph.add_node(datum_node, bipartite=1)
            for j in compatible:
                graph.add_edge(("var", j), datum_node)

    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=variable_nodes)
    return all(node in matching for node in variable_nodes)


def eval_predicate(phi: IntervalPredicate, c: CanonicalConfiguration) -> bool:
    """Вычисление булевой комбинации простых предикатов"""
    if isinstance(phi, SimpleIntervalPredicate):
        return eval_simple(phi, c)
    if isinstance(phi, PredNot):
        return not eval_predicate(phi.child, c)
    if isinstance(phi, PredAnd):
        return eval_predicate(phi.left, c) and eval_predicate(phi.right, c)
    if isinstance(phi, PredOr):
        return eval_predicate(phi.left, c) or eval_predicate(phi.right, c)
    raise TypeError(f"Неизвестный узел предиката: {phi!r}")


def leaves(phi: IntervalPredicate) -> List[SimpleIntervalPredicate]:
    if isinstance(phi, SimpleIntervalPredicate):
        return [phi]
    if isinstance(phi, PredNot):
        return leaves(phi.child)
    return leaves(phi.left) + leaves(phi.right)


def operator_count(phi: IntervalPredicate) -> int:
    if isinstance(phi, SimpleIntervalPredicate):
        return 0
    if isinstance(phi, PredNot):
        return 1 + operator_count(phi.child)
    return 1 + operator_count(phi.left) + operator_count(phi.right)


def width(phi: IntervalPredicate) -> int:
    return max((leaf.width for leaf in leaves(phi)), default=0)


def height(phi: IntervalPredicate) -> int:
    return max((leaf.height for leaf in leaves(phi)), default=0)


def predicate_metrics(phi: IntervalPredicate) -> Tuple[int, int, int]:
    """(ширина, высота, размер): размер равен сумме размеров листьев плюс число операторов"""
    size = sum(leaf.size() for leaf in leaves(phi)) + operator_count(phi)
    return width(phi), height(phi), size


def states_of(phi: IntervalPredicate) -> FrozenSet[str]:
    return frozenset(q for leaf in leaves(phi) for q in leaf.scope)


# Построители часто используемых предикатов

def conjunction(parts: Iterable[IntervalPredicate]) -> IntervalPredicate:
    parts = list(parts)
    if not parts:
        return TRUE
    return reduce(PredAnd, parts)


def disjunction(parts: Iterable[IntervalPredicate]) -> IntervalPredicate:
    parts = list(parts)
    if not parts:
        return FALSE
    return reduce(PredOr, parts)


def presence(state: str) -> SimpleIntervalPredicate:
    """Хотя бы один агент в состоянии state"""
    return SimpleIntervalPredicate.build(1, {(state, 0): Interval(1, None)})


def forall_absent(states: Iterable[str]) -> IntervalPredicate:
    """Ни одного агента в перечисленных состояниях: отрицание дизъюнкции присутствий"""
    return PredNot(disjunction(presence(q) for q in sorted(set(states))))


def forall_single(constraints: Mapping[str, Interval], variable: str = "x") -> IntervalPredicate:
    """
    Универсальный квантор по одной переменной: для всех данных x выполнено #(q,x) в интервале

    Записывается как отрицание существования данного, нарушающего одно из ограничений.
    """
    violations = []
    for state in sorted(constraints):
        for part in constraints[state].complement():
            violations.append(SimpleIntervalPredicate.build(1, {(state, 0): part}, [variable]))
    return PredNot(disjunction(violations))


def exists_data(count: int, constraints: Mapping[str, Interval]) -> SimpleIntervalPredicate:
    """count различных данных с одинаковыми ограничениями на каждое"""
    bounds: Dict[Tuple[str, int], Interval] = {}
    for j in range(count):
        for state, interval in constraints.items():
            bounds[(state, j)] = interval
    return SimpleIntervalPredicate.build(count, bounds)
