"""
Генераторы случайных протоколов, прогонов, предикатов и выражений.
Все генераторы детерминированы относительно переданного random.Random.
"""

import logging
import random
from typing import List, Optional, Sequence

from core.protocol import Guard, Output, Protocol, Transition, make_protocol
from logic.gre import Atom, Complement, GreNode, GreUnion, PostStar, PreStar
from logic.predicates import (
    Interval,
    IntervalPredicate,
    PredAnd,
    PredNot,
    PredOr,
    SimpleIntervalPredicate,
)
from runs.run import ConcreteRun, RunStep

logger = logging.getLogger(__name__)


def random_io_protocol(rng: random.Random, n_states: int,
                       n_transitions: Optional[int] = None) -> Protocol:
    """
    Случайный протокол с немедленным наблюдением над состояниями q0..q{n-1}

    Args:
        n_transitions: Число переходов (по умолчанию от 1 до 2 * n_states)
    """
    if n_states < 2:
        raise ValueError("Нужно хотя бы два состояния")
    states = [f"q{i}" for i in range(n_states)]
    count = n_transitions if n_transitions is not None else rng.randint(1, 2 * n_states)

    transitions = []
    for _ in range(count):
        observed = rng.choice(states)
        source = rng.choice(states)
        target = rng.choice([q for q in states if q != source])
        guard = rng.choice([Guard.EQ, Guard.NEQ])
        transitions.append(Transition(observed, source, guard, observed, target))

    initial = rng.sample(states, rng.randint(1, min(2, n_states)))
    output = {q: rng.choice([Output.TOP, Output.BOT]) for q in states}
    return make_protocol(states, transitions, initial, output)


def random_valid_run(rng: random.Random, protocol: Protocol, agents: int, data: int,
                     steps: int) -> ConcreteRun:
    """
    Случайный корректный прогон: на каждом шаге равновероятно выбирается разрешенный шаг

    Прогон короче steps, если разрешенных шагов не осталось.
    """
    if not 1 <= data <= agents:
        raise ValueError("Требуется 1 <= data <= agents")
    names = [f"a{i}" for i in range(1, agents + 1)]
    datum = {}
    for index, agent in enumerate(names):
        datum[agent] = f"d{index + 1}" if index < data else f"d{rng.randint(1, data)}"
    state = {agent: rng.choice(protocol.states) for agent in names}
    start = dict(state)

    run_steps: List[RunStep] = []
    for _ in range(steps):
        enabled = []
        for index, t in enumerate(protocol.transitions):
            if t.is_idle:
                continue
            for actor in names:
                if state[actor] != t.q2:
                    continue
                for observed in names:
                    if observed == actor or state[observed] != t.q1:
                        continue
                    if (datum[actor] == datum[observed]) == (t.guard is Guard.EQ):
                        enabled.append(RunStep(index, actor, observed))
        if not enabled:
            break
        step = rng.choice(enabled)
        run_steps.append(step)
        state[step.actor] = protocol.transitions[step.transition].q4
    return ConcreteRun(datum, start, tuple(run_steps))


def _random_interval(rng: random.Random, height: int) -> Interval:
    lower = rng.randint(0, height)
    if rng.random() < 0.5:
        return Interval(lower, None)
    return Interval(lower, rng.randint(lower, height))


def random_simple_predicate(rng: random.Random, states: Sequence[str], height: int,
                            width: int) -> SimpleIntervalPredicate:
    """Простой предикат ширины от 1 до width с границами не выше height"""
    m = rng.randint(1, max(1, width))
    bounds = {}
    for j in range(m):
        for q in rng.sample(list(states), rng.randint(1, len(states))):
            bounds[(q, j)] = _random_interval(rng, height)
    return SimpleIntervalPredicate.build(m, bounds)


def random_predicate(rng: random.Random, states: Sequence[str], height: int, width: int,
                     depth: int = 2) -> IntervalPredicate:
    """Булева комбинация простых предикатов глубины не больше depth"""
    if depth == 0 or rng.random() < 0.3:
        return random_simple_predicate(rng, states, height, width)
    choice = rng.choice(["not", "and", "or"])
    if choice == "not":
        return PredNot(random_predicate(rng, states, height, width, depth - 1))
    left = random_predicate(rng, states, height, width, depth - 1)
    right = random_predicate(rng, states, height, width, depth - 1)
    return PredAnd(left, right) if choice == "and" else PredOr(left, right)


def random_gre(rng: random.Random, states: Sequence[str], depth: int,
               height: int = 2, width: int = 2) -> GreNode:
    """Случайное выражение достижимости глубины не больше depth"""
    if depth == 0 or rng.random() < 0.25:
        return Atom(random_predicate(rng, states, height, width, depth=1))
    choice = rng.choice(["union", "compl", "post", "pre"])
    if choice == "union":
        return GreUnion(random_gre(rng, states, depth - 1, height, width),
                        random_gre(rng, states, depth - 1, height, width))
    child = random_gre(rng, states, depth - 1, height, width)
    if choice == "compl":
        return Complement(child)
    return PostStar(child) if choice == "post" else PreStar(child)
