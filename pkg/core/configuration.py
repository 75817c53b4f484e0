"""
Канонические конфигурации.
Конфигурация хранится как мультимножество профилей данных (число агентов по состояниям).
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Sequence, Tuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class DatumProfile:
    """Профиль одного данного: пары (состояние, число агентов) с положительными числами"""
    counts: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, int]) -> "DatumProfile":
        for state, value in mapping.items():
            if value < 0:
                raise ValueError(f"Отрицательное число агентов в состоянии {state}")
        counts = tuple(sorted((q, v) for q, v in mapping.items() if v > 0))
        if not counts:
            raise ValueError("Профиль данного должен содержать хотя бы одного агента")
        return cls(counts)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.counts)

    def count(self, state: str) -> int:
        for q, v in self.counts:
            if q == state:
                return v
        return 0

    @property
    def total(self) -> int:
        return sum(v for _, v in self.counts)

    def states(self) -> List[str]:
        return [q for q, _ in self.counts]

    def moved(self, moves: Iterable[Tuple[str, str]]) -> "DatumProfile":
        """Профиль после перемещения агентов по парам (откуда, куда)"""
        counts = Counter(self.as_dict())
        for source, target in moves:
            counts[source] -= 1
            counts[target] += 1
        return DatumProfile.of(counts)

    def __str__(self) -> str:
        return ", ".join(f"{q}={v}" for q, v in self.counts)


@dataclass(frozen=True)
class CanonicalConfiguration:
    """Мультимножество профилей в каноническом порядке с явными кратностями"""
    entries: Tuple[Tuple[DatumProfile, int], ...] = ()

    @classmethod
    def from_profiles(cls, profiles: Iterable) -> "CanonicalConfiguration":
        counter: Counter = Counter()
        for profile in profiles:
            if not isinstance(profile, DatumProfile):
                profile = DatumProfile.of(profile)
            counter[profile] += 1
        return cls(tuple(sorted(counter.items())))

    @classmethod
    def from_counter(cls, counter: Mapping[DatumProfile, int]) -> "CanonicalConfiguration":
        return cls(tuple(sorted((p, m) for p, m in counter.items() if m > 0)))

    @classmethod
    def from_agents(cls, agents: Mapping[Hashable, Tuple[Hashable, str]]) -> "CanonicalConfiguration":
        """
        Канонизация конфигурации с явными агентами

        Args:
            agents: Отображение агент -> (данное, состояние)
        """
        per_datum: Dict[Hashable, Counter] = {}
        for datum, state in agents.values():
            per_datum.setdefault(datum, Counter())[state] += 1
        return cls.from_profiles(DatumProfile.of(c) for c in per_datum.values())

    @classmethod
    def empty(cls) -> "CanonicalConfiguration":
        return cls(())

    def profiles(self) -> Iterator[DatumProfile]:
        """Профили с учетом кратности"""
        for profile, multiplicity in self.entries:
            for _ in range(multiplicity):
                yield profile

    def multiplicity(self, profile: DatumProfile) -> int:
        for p, m in self.entries:
            if p == profile:
                return m
        return 0

    def as_counter(self) -> Counter:
        return Counter(dict(self.entries))

    @property
    def data_count(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def agent_count(self) -> int:
        return sum(p.total * m for p, m in self.entries)

    def is_empty(self) -> bool:
        return not self.entries

    def occupied_states(self) -> List[str]:
        return sorted({q for p, _ in self.entries for q in p.states()})

    def state_total(self, state: str) -> int:
        return sum(p.count(state) * m for p, m in self.entries)

    def replace(self, removed: Sequence[DatumProfile], added: Sequence[DatumProfile]) -> "CanonicalConfiguration":
        """Новая конфигурация: по одной копии removed заменены профилями added"""
        counter = self.as_counter()
        for profile in removed:
            if counter[profile] < 1:
                raise ValueError(f"Профиль {profile} отсутствует в конфигурации")
            counter[profile] -= 1
        for profile in added:
            counter[profile] += 1
        return CanonicalConfiguration.from_counter(counter)

    def sort_key(self) -> Tuple:
        """Ключ порядка перебора: (число агентов, число данных, канонический вид)"""
        return (self.agent_count, self.data_count, self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return "{}"
        return "{" + "; ".join(str(p) for p in self.profiles()) + "}"


def signature(c: CanonicalConfiguration) -> Tuple[int, ...]:
    """Сигнатура: отсортированные числа агентов по данным"""
    return tuple(sorted(p.total for p in c.profiles()))


def profiles_of_size(states: Sequence[str], size: int) -> List[DatumProfile]:
    """Все профили с ровно size агентами на заданных состояниях"""
    result = []
    for combo in itertools.combinations_with_replacement(sorted(states), size):
        result.append(DatumProfile.of(Counter(combo)))
    return result


def configurations_with_signature(states: Sequence[str], sig: Sequence[int]) -> List[CanonicalConfiguration]:
    """Все канонические конфигурации с заданной сигнатурой"""
    groups = Counter(sig)
    per_size = []
    for size, multiplicity in sorted(groups.items()):
        options = profiles_of_size(states, size)
        per_size.append(list(itertools.combinations_with_replacement(options, multiplicity)))

    result = set()
    for choice in itertools.product(*per_size):
        result.add(CanonicalConfiguration.from_profiles(p for group in choice for p in group))
    return sorted(result, key=lambda c: c.sort_key())


def enumerate_configurations(states: Sequence[str], max_data: int,
                             max_agents_per_datum: int,
                             include_empty: bool = True) -> Iterator[CanonicalConfiguration]:
    """
    Перебор конфигураций с ограничениями на число данных и агентов на данное

    Порядок: по числу агентов, затем по числу данных, затем канонический.
    """
    options: List[DatumProfile] = []
    for size in range(1, max_agents_per_datum + 1):
        options.extend(profiles_of_size(states, size))

    candidates = []
    for data in range(0 if include_empty else 1, max_data + 1):
        for combo in itertools.combinations_with_replacement(options, data):
            candidates.append(CanonicalConfiguration.from_profiles(combo))

    candidates.sort(key=lambda c: c.sort_key())
    logger.debug(f"Перебор конфигураций: {len(candidates)} кандидатов")
    return iter(candidates)


def initial_configurations(p, max_data: int, max_agents_per_datum: int,
                           include_empty: bool = False) -> Iterator[CanonicalConfiguration]:
    """Начальные конфигурации протокола (все агенты в начальных состояниях)"""
    return enumerate_configurations(sorted(p.initial), max_data, max_agents_per_datum,
                                    include_empty=include_empty)


def is_consensus(p, c: CanonicalConfiguration, value) -> bool:
    """Все присутствующие агенты выдают value (пустая конфигурация подходит для обоих)"""
    return all(p.output.get(q) is value for q in c.occupied_states())

