"""
Конструктивные преобразования прогонов.
Копирование агентов и данных, ядро по агентам, ядро по данным и нормализация прогона.
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, List, Mapping, Optional, Tuple

from core.errors import RunError
from core.protocol import Guard, Protocol
from runs.run import (
    ConcreteRun,
    RunStep,
    SplitTrace,
    fresh_names,
    natural_key,
    timeline,
    trace_of,
)

logger = logging.getLogger(__name__)


def _check(p: Protocol, r: ConcreteRun, result: ConcreteRun, operation: str) -> ConcreteRun:
    # выход преобразования всегда воспроизводим
    timeline(p, result)
    logger.debug(f"{operation}: агентов {len(r.datum)} -> {len(result.datum)}, "
                 f"шагов {len(r.steps)} -> {len(result.steps)}")
    return result


def agent_copycat(p: Protocol, r: ConcreteRun, a: str, fresh: Optional[str] = None) -> ConcreteRun:
    """
    Добавление агента fresh, повторяющего каждый шаг агента a сразу после него

    fresh получает данное агента a, начинает и заканчивает там же, где a, и никем не наблюдается.
    """
    if a not in r.datum:
        raise RunError(f"агент {a} отсутствует в прогоне")
    fresh = fresh or fresh_names(r.datum, 1, "a")[0]
    if fresh in r.datum:
        raise RunError(f"агент {fresh} уже есть в прогоне")
    timeline(p, r)

    steps = []
    for step in r.steps:
        steps.append(step)
        if step.actor == a:
            steps.append(RunStep(step.transition, fresh, step.observed))

    datum = dict(r.datum)
    datum[fresh] = r.datum[a]
    start = dict(r.start)
    start[fresh] = r.start[a]
    return _check(p, r, ConcreteRun(datum, start, tuple(steps)), "agent_copycat")


def data_copycat(p: Protocol, r: ConcreteRun, d: str, fresh_datum: Optional[str] = None,
                 agent_names: Optional[Mapping[str, str]] = None) -> ConcreteRun:
    """
    Добавление данного fresh_datum с копиями всех агентов данного d

    После каждого шага агента данного d его копия повторяет шаг: при условии =
    наблюдает копию наблюдаемого, при условии != того же наблюдаемого.

    Args:
        agent_names: Имена копий по исходным агентам (по умолчанию новые имена ~aN)
    """
    if d not in set(r.datum.values()):
        raise RunError(f"данное {d} отсутствует в прогоне")
    fresh_datum = fresh_datum or fresh_names(r.datum.values(), 1, "d")[0]
    if fresh_datum in set(r.datum.values()):
        raise RunError(f"данное {fresh_datum} уже есть в прогоне")
    timeline(p, r)

    originals = r.agents_of(d)
    if agent_names is None:
        names = fresh_names(r.datum, len(originals), "a")
        copy = dict(zip(originals, names))
    else:
        copy = {a: agent_names[a] for a in originals}
    clash = set(copy.values()) & set(r.datum)
    if clash:
        raise RunError(f"имена копий уже заняты: {sorted(clash)}")

    steps = []
    for step in r.steps:
        steps.append(step)
        if r.datum[step.actor] != d:
            continue
        guard = p.transitions[step.transition].guard
        observed = copy[step.observed] if guard is Guard.EQ else step.observed
        steps.append(RunStep(step.transition, copy[step.actor], observed))

    datum = dict(r.datum)
    start = dict(r.start)
    for original, twin in copy.items():
        datum[twin] = fresh_datum
        start[twin] = r.start[original]
    return _check(p, r, ConcreteRun(datum, start, tuple(steps)), "data_copycat")


def _reduce_bunch(p: Protocol, r: ConcreteRun, bunch: List[str],
                  states: List[Dict[str, str]]) -> ConcreteRun:
    """Замена связки агентов (одно данное, одно начало, один конец) представителями по состояниям"""
    members = set(bunch)
    first_seen: Dict[str, Tuple[int, str]] = {}
    last_seen: Dict[str, Tuple[int, str]] = {}
    for i, config in enumerate(states):
        for agent in bunch:
            q = config[agent]
            if q not in first_seen:
                first_seen[q] = (i, agent)
            if q not in last_seen or last_seen[q][0] != i:
                last_seen[q] = (i, agent)

    visited = sorted(first_seen, key=lambda q: p.state_index[q])
    # представители получают идентификаторы агентов связки по порядку
    role = dict(zip(visited, bunch))

    def retarget(observed: str, i: int) -> str:
        if observed in members:
            return role[states[i][observed]]
        return observed

    steps = []
    for i, step in enumerate(r.steps):
        if step.actor not in members:
            steps.append(RunStep(step.transition, step.actor, retarget(step.observed, i)))
            continue
        for q in visited:
            f_q, alpha_q = first_seen[q]
            l_q, beta_q = last_seen[q]
            if (i < f_q and step.actor == alpha_q) or (i >= l_q and step.actor == beta_q):
                steps.append(RunStep(step.transition, role[q], retarget(step.observed, i)))

    datum = {a: d for a, d in r.datum.items() if a not in members or a in role.values()}
    start = {a: r.start[a] for a in datum}
    return ConcreteRun(datum, start, tuple(steps))


def agents_core(p: Protocol, r: ConcreteRun) -> ConcreteRun:
    """
    Сокращение числа агентов каждого данного до не более |Q|^3

    Каждая связка (данное, начало, конец) с более чем |Q| агентами заменяется
    не более чем |Q| представителями; наблюдения агентов связки в состоянии q
    перенаправляются на представителя состояния q.
    """
    states = timeline(p, r)
    bunches = defaultdict(list)
    for agent in r.agents:
        bunches[(r.datum[agent], states[0][agent], states[-1][agent])].append(agent)

    result = r
    for key in sorted(bunches, key=lambda k: (natural_key(k[0]), k[1], k[2])):
        bunch = bunches[key]
        if len(bunch) <= p.size:
            continue
        logger.debug(f"Сокращение связки {key}: {len(bunch)} агентов")
        result = _reduce_bunch(p, result, bunch, timeline(p, result))
    return _check(p, r, result, "agents_core")


def _bijection(sources: List[str], targets: List[str], key_source, key_target) -> Dict[str, str]:
    """Биекция, сохраняющая ключ; агенты сопоставляются по порядку идентификаторов"""
    groups: Dict[Tuple, List[str]] = defaultdict(list)
    for agent in sorted(targets, key=natural_key):
        groups[key_target(agent)].append(agent)
    mapping = {}
    for agent in sorted(sources, key=natural_key):
        bucket = groups.get(key_source(agent))
        if not bucket:
            raise RunError(f"нет пары для агента {agent} при построении биекции")
        mapping[agent] = bucket.pop(0)
    return mapping


def _reduce_trace_group(p: Protocol, r: ConcreteRun, group: List[str]) -> ConcreteRun:
    """
    Сокращение данных с одинаковым следом до одного данного на расщепленный след

    Для каждого расщепленного следа str берутся: δ, первое данное, имеющее его раньше всех (в f_str),
    ε, данное, имеющее его позже всех (в l_str), и представитель η. Агенты η повторяют агентов δ
    до f_str, стоят на месте до l_str и затем повторяют агентов ε.
    """
    states = timeline(p, r)
    members = set(group)
    first, last = states[0], states[-1]
    total = len(states)

    def split_at(d: str, i: int) -> SplitTrace:
        return SplitTrace.of(Counter((first[a], states[i][a], last[a]) for a in r.agents_of(d)))

    split = {(d, i): split_at(d, i) for d in group for i in range(total)}
    first_at: Dict[SplitTrace, Tuple[int, str]] = {}
    last_at: Dict[SplitTrace, Tuple[int, str]] = {}
    for i in range(total):
        for d in group:
            s = split[(d, i)]
            if s not in first_at:
                first_at[s] = (i, d)
            if s not in last_at or last_at[s][0] != i:
                last_at[s] = (i, d)

    realised = sorted(first_at, key=lambda s: s.counts)
    eta = dict(zip(realised, group))

    # биекции агентов: f (η -> δ) и g (δ -> ε), l = g ∘ f
    f_map: Dict[SplitTrace, Dict[str, str]] = {}
    l_map: Dict[SplitTrace, Dict[str, str]] = {}
    for s in realised:
        f_s, delta = first_at[s]
        l_s, epsilon = last_at[s]
        f_map[s] = _bijection(r.agents_of(eta[s]), r.agents_of(delta),
                              lambda a: (first[a], last[a]), lambda a: (first[a], last[a]))
        g = _bijection(r.agents_of(delta), r.agents_of(epsilon),
                       lambda a: (first[a], states[f_s][a], last[a]),
                       lambda a: (first[a], states[l_s][a], last[a]))
        l_map[s] = {a: g[b] for a, b in f_map[s].items()}
    f_inverse = {s: {v: k for k, v in m.items()} for s, m in f_map.items()}
    l_inverse = {s: {v: k for k, v in m.items()} for s, m in l_map.items()}

    def image(observed: str, i: int) -> str:
        d_o = r.datum[observed]
        if d_o not in members:
            return observed
        s_o = split[(d_o, i)]
        f_s, delta = first_at[s_o]
        q_o = states[i][observed]
        template = min((a for a in r.agents_of(delta) if states[f_s][a] == q_o), key=natural_key)
        return f_inverse[s_o][template]

    steps = []
    for i, step in enumerate(r.steps):
        actor_datum = r.datum[step.actor]
        if actor_datum not in members:
            steps.append(RunStep(step.transition, step.actor, image(step.observed, i)))
            continue
        same = p.transitions[step.transition].guard is Guard.EQ
        for s in realised:
            f_s, delta = first_at[s]
            l_s, epsilon = last_at[s]
            if i < f_s and actor_datum == delta:
                mover = f_inverse[s][step.actor]
                observed = f_inverse[s][step.observed] if same else image(step.observed, i)
                steps.append(RunStep(step.transition, mover, observed))
            if i >= l_s and actor_datum == epsilon:
                mover = l_inverse[s][step.actor]
                observed = l_inverse[s][step.observed] if same else image(step.observed, i)
                steps.append(RunStep(step.transition, mover, observed))

    kept = set(eta.values())
    datum = {a: d for a, d in r.datum.items() if d not in members or d in kept}
    start = {a: r.start[a] for a in datum}
    return ConcreteRun(datum, start, tuple(steps))


def data_core(p: Protocol, r: ConcreteRun, k: int) -> ConcreteRun:
    """
    Сокращение числа данных: не более (K+1)^(|Q|^3+|Q|^2)

    Группа данных с одинаковым следом сокращается, если данных в ней больше,
    чем реализованных в ней расщепленных следов.
    """
    states = timeline(p, r)
    for d in r.data:
        count = len(r.agents_of(d))
        if count > k:
            raise RunError(f"у данного {d} {count} агентов, больше K = {k}")

    groups = defaultdict(list)
    for d in r.data:
        groups[trace_of(p, r, d, states)].append(d)

    result = r
    for trace in sorted(groups, key=lambda t: t.counts):
        group = groups[trace]
        if len(group) < 2:
            continue
        current = timeline(p, result)
        realised = {
            tuple(sorted((current[0][a], config[a], current[-1][a]) for a in result.agents_of(d)))
            for d in group for config in current
        }
        if len(group) <= len(realised):
            continue
        logger.debug(f"Сокращение группы следа: {len(group)} данных, {len(realised)} расщепленных следов")
        result = _reduce_trace_group(p, result, group)
    return _check(p, r, result, "data_core")


def normalize_run(p: Protocol, r: ConcreteRun) -> ConcreteRun:
    """
    Прогон с теми же начальной и конечной конфигурациями, в котором наблюдается
    не более |Q|^3 агентов каждого данного и внешне наблюдаются агенты
    не более (|Q|^3+1)^(|Q|^3+|Q|^2) данных.
    """
    states = timeline(p, r)
    first, last = states[0], states[-1]

    core = agents_core(p, r)
    reduced = data_core(p, core, p.size ** 3)

    # возвращаем удаленные данные копиями данных с тем же следом
    core_states = timeline(p, core)
    result = reduced
    present = set(reduced.datum.values())
    for d in core.data:
        if d in present:
            continue
        trace = trace_of(p, core, d, core_states)
        result_states = timeline(p, result)
        template = next(x for x in result.data if trace_of(p, result, x, result_states) == trace)
        names = _bijection(result.agents_of(template), core.agents_of(d),
                           lambda a: (result_states[0][a], result_states[-1][a]),
                           lambda a: (core_states[0][a], core_states[-1][a]))
        result = data_copycat(p, result, template, d, names)

    # возвращаем удаленных агентов копиями агентов с тем же данным, началом и концом
    for agent in r.agents:
        if agent in result.datum:
            continue
        result_states = timeline(p, result)
        template = next(
            a for a in result.agents
            if result.datum[a] == r.datum[agent]
            and result_states[0][a] == first[agent]
            and result_states[-1][a] == last[agent]
        )
        result = agent_copycat(p, result, template, agent)

    logger.info(f"Нормализация: шагов {len(r.steps)} -> {len(result.steps)}")
    return _check(p, r, result, "normalize_run")
