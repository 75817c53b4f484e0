"""
Абстракция n-коробок и (n, M)-контейнеров.
Переход от контейнера к интервальному предикату и обратно.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from core.configuration import CanonicalConfiguration, DatumProfile
from core.errors import EnumerationBudgetError
from logic.predicates import (
    Interval,
    IntervalPredicate,
    PredAnd,
    PredNot,
    SimpleIntervalPredicate,
    TRUE,
    conjunction,
    eval_predicate,
)

logger = logging.getLogger(__name__)

DEFAULT_CONTAINER_BUDGET = 1_000_000


@dataclass(frozen=True, order=True)
class NBox:
    """n-коробка: усеченные на n числа агентов по состояниям (нули не хранятся)"""
    n: int
    values: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, n: int, mapping: Dict[str, int]) -> "NBox":
        if n < 1:
            raise ValueError("Порог коробки должен быть не меньше 1")
        for state, value in mapping.items():
            if not 0 <= value <= n:
                raise ValueError(f"Значение {value} в состоянии {state} вне [0, {n}]")
        return cls(n, tuple(sorted((q, v) for q, v in mapping.items() if v > 0)))

    def value(self, state: str) -> int:
        return dict(self.values).get(state, 0)

    def is_zero(self) -> bool:
        return not self.values

    def __str__(self) -> str:
        return "(" + ", ".join(f"{q}={v}" for q, v in self.values) + ")"


@dataclass(frozen=True)
class Container:
    """
    (n, M)-контейнер: для каждой ненулевой коробки число данных, усеченное на M.

    Нулевая коробка не хранится: неприсутствующих данных бесконечно много.
    states хранит множество состояний Q, над которым построены коробки.
    """
    n: int
    m: int
    counts: Tuple[Tuple[NBox, int], ...]
    states: Tuple[str, ...]

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("Пороги контейнера n и M должны быть не меньше 1")
        for box, count in self.counts:
            if box.n != self.n:
                raise ValueError(f"Коробка {box} имеет порог {box.n}, ожидался {self.n}")
            if not 0 < count <= self.m:
                raise ValueError(f"Число данных {count} вне (0, {self.m}]")

    def count(self, box: NBox) -> int:
        return dict(self.counts).get(box, 0)

    def __str__(self) -> str:
        body = "; ".join(f"{box}:{count}" for box, count in self.counts)
        return f"container(n={self.n}, M={self.m}) [{body}]"


def box_of(profile: DatumProfile, n: int) -> NBox:
    """Усечение профиля данного на n"""
    if n < 1:
        raise ValueError("Порог коробки должен быть не меньше 1")
    return NBox(n, tuple((q, min(n, v)) for q, v in profile.counts))


def container_of(c: CanonicalConfiguration, n: int, m: int, states: Sequence[str]) -> Container:
    """
    Контейнер конфигурации

    Args:
        c: Конфигурация
        n: Порог коробок
        m: Порог числа данных
        states: Множество состояний Q; предикат контейнера ограничивает все коробки над ним,
            поэтому незанятые в c состояния тоже должны входить в states

    Raises:
        ValueError: c занимает состояние вне states
    """
    all_states = tuple(sorted(set(states)))
    outside = set(c.occupied_states()) - set(all_states)
    if outside:
        raise ValueError(f"Состояния {sorted(outside)} не входят в множество состояний контейнера")
    counter: Counter = Counter()
    for profile, multiplicity in c.entries:
        counter[box_of(profile, n)] += multiplicity
    counts = tuple(sorted((box, min(m, count)) for box, count in counter.items()))
    return Container(n, m, counts, all_states)


def equiv(c1: CanonicalConfiguration, c2: CanonicalConfiguration, n: int, m: int) -> bool:
    """Эквивалентность по (n, M): совпадение контейнеров над объединением занятых состояний"""
    states = set(c1.occupied_states()) | set(c2.occupied_states())
    return container_of(c1, n, m, states).counts == container_of(c2, n, m, states).counts


def refines(c1: CanonicalConfiguration, c2: CanonicalConfiguration,
            n1: int, m1: int, n2: int, m2: int) -> bool:
    """Проверка измельчения: из (n2, M2)-эквивалентности следует (n1, M1)-эквивалентность"""
    return not equiv(c1, c2, n2, m2) or equiv(c1, c2, n1, m1)


def box_count(states: Sequence[str], n: int) -> int:
    """|Boxes_n| = (n+1)^|Q|"""
    return (n + 1) ** len(set(states))


def all_boxes(states: Sequence[str], n: int, include_zero: bool = False) -> List[NBox]:
    states = sorted(set(states))
    boxes = []
    for values in itertools.product(range(n + 1), repeat=len(states)):
        box = NBox.of(n, dict(zip(states, values)))
        if include_zero or not box.is_zero():
            boxes.append(box)
    return boxes


def _box_at_least(box: NBox, states: Sequence[str], count: int) -> SimpleIntervalPredicate:
    """Не менее count различных данных, чьи n-коробки равны box"""
    bounds = {}
    for state in states:
        value = box.value(state)
        interval = Interval(value, value) if value < box.n else Interval(value, None)
        for j in range(count):
            bounds[(state, j)] = interval
    return SimpleIntervalPredicate.build(count, bounds)


def container_to_predicate(cont: Container) -> IntervalPredicate:
    """
    Интервальный предикат, выполненный ровно на классе эквивалентности контейнера

    Для каждой ненулевой коробки b: ровно cont(b) данных при cont(b) < M и не менее M иначе.
    """
    parts: List[IntervalPredicate] = []
    for box in all_boxes(cont.states, cont.n):
        count = cont.count(box)
        if count < cont.m:
            at_least = _box_at_least(box, cont.states, count)
            more = _box_at_least(box, cont.states, count + 1)
            parts.append(PredAnd(at_least, PredNot(more)) if count > 0 else PredNot(more))
        else:
            parts.append(_box_at_least(box, cont.states, cont.m))
    return conjunction(parts) if parts else TRUE


def representative(cont: Container) -> CanonicalConfiguration:
    """Канонический представитель: cont(b) данных с профилем, в точности равным b"""
    profiles = []
    for box, count in cont.counts:
        profiles.extend([DatumProfile(box.values)] * count)
    return CanonicalConfiguration.from_profiles(profiles)


def enumerate_containers(states: Sequence[str], n: int, m: int,
                         budget: Optional[int] = None) -> Iterator[Container]:
    """
    Перебор всех (n, M)-контейнеров над states

    Raises:
        EnumerationBudgetError: число контейнеров больше бюджета
    """
    states = tuple(sorted(set(states)))
    boxes = all_boxes(states, n)
    required = (m + 1) ** len(boxes)
    limit = budget or DEFAULT_CONTAINER_BUDGET
    if required > limit:
        logger.warning(f"Перебор контейнеров отклонен: {required} > {limit}")
        raise EnumerationBudgetError(required, limit)

    for counts in itertools.product(range(m + 1), repeat=len(boxes)):
        pairs = tuple(sorted((box, k) for box, k in zip(boxes, counts) if k > 0))
        yield Container(n, m, pairs, states)


def predicate_to_containers(phi: IntervalPredicate, n: int, m: int, states: Sequence[str],
                            budget: Optional[int] = None) -> Set[Container]:
    """
    Множество (n, M)-контейнеров, объединение которых равно множеству моделей phi

    Каждый контейнер проверяется на своем каноническом представителе.
    """
    result = set()
    total = 0
    for cont in enumerate_containers(states, n, m, budget):
        total += 1
        if eval_predicate(phi, representative(cont)):
            result.add(cont)
    logger.info(f"Перебрано контейнеров: {total}, в предикате: {len(result)}")
    return result
