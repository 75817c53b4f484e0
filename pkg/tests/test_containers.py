"""
Тесты n-коробок, (n, M)-контейнеров и перехода между контейнерами и предикатами.
"""

import itertools
import random
from collections import defaultdict

import pytest

from core.configuration import CanonicalConfiguration, DatumProfile, enumerate_configurations
from core.errors import EnumerationBudgetError
from core.generators import random_predicate
from logic.containers import (
    Container,
    NBox,
    all_boxes,
    box_count,
    box_of,
    container_of,
    container_to_predicate,
    enumerate_containers,
    equiv,
    predicate_to_containers,
    refines,
    representative,
)
from logic.predicates import Interval, SimpleIntervalPredicate, eval_predicate, height, width

STATES = ("q0", "q1")
THREE_STATES = ("q0", "q1", "q2")
THRESHOLDS = [(1, 1), (1, 2), (2, 1), (2, 2)]

# перебор контейнеров для обращения предиката выполняется целиком до этого размера
INVERSION_SPACE = 2187


def config(*profiles):
    return CanonicalConfiguration.from_profiles(profiles)


def classes(configs, states, n, m):
    """Разбиение конфигураций на классы (n, M)-эквивалентности"""
    grouped = defaultdict(list)
    for c in configs:
        grouped[container_of(c, n, m, states)].append(c)
    return grouped


@pytest.fixture
def small_configs():
    return list(enumerate_configurations(STATES, 3, 3))


class TestBoxes:

    def test_truncation(self):
        box = box_of(DatumProfile.of({"q0": 3, "q1": 1}), 2)
        assert box == NBox.of(2, {"q0": 2, "q1": 1})
        assert box.value("q0") == 2

    def test_box_count(self):
        assert box_count(STATES, 2) == 9
        assert len(all_boxes(STATES, 2)) == 8
        assert len(all_boxes(STATES, 2, include_zero=True)) == 9

    def test_invalid_thresholds(self):
        with pytest.raises(ValueError):
            NBox.of(0, {})
        with pytest.raises(ValueError):
            Container(1, 0, (), STATES)


class TestContainers:

    def test_counts_are_truncated(self):
        c = config({"q0": 1}, {"q0": 1}, {"q0": 1}, {"q1": 5})
        cont = container_of(c, 1, 2, STATES)
        assert cont.count(NBox.of(1, {"q0": 1})) == 2
        assert cont.count(NBox.of(1, {"q1": 1})) == 1

    def test_unoccupied_states_are_constrained(self):
        c = config({"q0": 1})
        other = config({"q0": 1, "q1": 1})
        assert not equiv(c, other, 1, 1)
        phi = container_to_predicate(container_of(c, 1, 1, STATES))
        assert eval_predicate(phi, c)
        assert not eval_predicate(phi, other)
        assert container_of(c, 1, 1, STATES).states == STATES

    def test_states_are_required(self):
        c = config({"q0": 1})
        with pytest.raises(TypeError):
            container_of(c, 1, 1)
        with pytest.raises(ValueError):
            container_of(config({"q2": 1}), 1, 1, STATES)

    @pytest.mark.slow
    @pytest.mark.parametrize("states", [STATES, THREE_STATES])
    @pytest.mark.parametrize("n,m", THRESHOLDS)
    def test_predicate_defines_equivalence_class(self, states, n, m):
        configs = list(enumerate_configurations(states, 3, 3))
        grouped = classes(configs, states, n, m)
        # номер класса каждой конфигурации
        index = {cont: i for i, cont in enumerate(grouped)}
        labelled = [(c, index[container_of(c, n, m, states)]) for c in configs]
        for cont, members in grouped.items():
            phi, own = container_to_predicate(cont), index[cont]
            assert height(phi) <= n and width(phi) <= m
            for other, label in labelled:
                assert eval_predicate(phi, other) == (label == own), f"{members[0]} / {other}"

    @pytest.mark.slow
    @pytest.mark.parametrize("states", [STATES, THREE_STATES])
    @pytest.mark.parametrize("n,m", THRESHOLDS)
    def test_container_predicate_inverts(self, states, n, m):
        boxes = len(all_boxes(states, n))
        if boxes > 8:
            pytest.skip(f"{boxes} ненулевых коробок: перебор контейнеров слишком велик")
        space = (m + 1) ** boxes
        grouped = classes(enumerate_configurations(states, 3, 3), states, n, m)
        conts = sorted(grouped, key=str)
        if space > INVERSION_SPACE:
            conts = random.Random(n * 10 + m).sample(conts, min(10, len(conts)))
        for cont in conts:
            assert predicate_to_containers(container_to_predicate(cont), n, m, states) == {cont}

    def test_representative_lies_in_class(self):
        for cont in enumerate_containers(STATES, 1, 2):
            assert container_of(representative(cont), 1, 2, STATES) == cont

    def test_refinement(self, small_configs):
        sample = small_configs[::5]
        for n1, m1, n2, m2 in [(1, 1, 2, 2), (1, 2, 2, 2), (2, 1, 3, 3)]:
            for c1, c2 in itertools.product(sample, repeat=2):
                assert refines(c1, c2, n1, m1, n2, m2)

    @pytest.mark.parametrize("states", [STATES, THREE_STATES])
    def test_finer_container_determines_coarser(self, states):
        configs = list(enumerate_configurations(states, 3, 3))
        for (n1, m1), (n2, m2) in itertools.product(THRESHOLDS, repeat=2):
            if n1 > n2 or m1 > m2:
                continue
            coarse = {}
            for c in configs:
                rough = container_of(c, n1, m1, states)
                assert coarse.setdefault(container_of(c, n2, m2, states), rough) == rough

    def test_enumeration_budget(self):
        with pytest.raises(EnumerationBudgetError):
            list(enumerate_containers(("q0", "q1", "q2"), 2, 3, budget=100))


class TestPredicateTransfer:

    @pytest.mark.parametrize("states,max_agents", [(STATES, 3), (THREE_STATES, 2)])
    def test_equivalent_configurations_agree(self, states, max_agents):
        configs = list(enumerate_configurations(states, 3, max_agents))
        rng = random.Random(len(states))
        partitions = {nm: classes(configs, states, *nm) for nm in THRESHOLDS}
        for index in range(100):
            n, m = THRESHOLDS[index % len(THRESHOLDS)]
            # граница n сама различает n и n+1 агентов, поэтому высота строго меньше n
            phi = random_predicate(rng, states, height=n - 1, width=m, depth=2)
            assert height(phi) < n and width(phi) <= m
            for cont, members in partitions[(n, m)].items():
                values = {eval_predicate(phi, c) for c in members}
                assert len(values) == 1, f"{phi} различает класс {cont}"

    def test_upper_bound_at_threshold_separates_class(self):
        phi = SimpleIntervalPredicate.build(1, {("q0", 0): Interval(1, 1)})
        one, two = config({"q0": 1}), config({"q0": 2})
        assert equiv(one, two, 1, 1)
        assert eval_predicate(phi, one) and not eval_predicate(phi, two)
        assert not equiv(one, two, height(phi) + 1, 1)


class TestPredicateToContainers:

    def test_example_predicate(self, ex28, small_configs):
        n, m = height(ex28) + 1, width(ex28)
        containers = predicate_to_containers(ex28, n, m, STATES)
        for c in small_configs:
            assert eval_predicate(ex28, c) == (container_of(c, n, m, STATES) in containers)

    def test_random_predicates(self, rng, small_configs):
        for _ in range(5):
            phi = random_predicate(rng, STATES, height=1, width=2, depth=1)
            n, m = height(phi) + 1, max(1, width(phi))
            containers = predicate_to_containers(phi, n, m, STATES)
            for c in small_configs[::3]:
                assert eval_predicate(phi, c) == (container_of(c, n, m, STATES) in containers)
