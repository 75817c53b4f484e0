"""
Сериализация значений обратно в текстовые форматы.
Результат каждой функции разбирается соответствующим парсером в то же значение.
"""

from typing import List

from core.configuration import CanonicalConfiguration
from core.protocol import Guard, Protocol
from logic.gre import Atom, Complement, GreNode, GreUnion, PostStar, PreStar
from logic.predicates import (
    IntervalPredicate,
    PredAnd,
    PredNot,
    PredOr,
    SimpleIntervalPredicate,
)
from parsing.base import quote
from reductions.counter_machine import CounterMachine, Dec, Halt, Inc
from runs.run import ConcreteRun


def serialize_protocol(p: Protocol) -> str:
    """Переходы с обоими условиями подряд (= затем !=) записываются через *"""
    lines = [
        "states " + " ".join(p.states),
        "init " + " ".join(q for q in p.states if q in p.initial),
        "output " + " ".join(f"{q}={p.output[q].value}" for q in p.states),
        "trans",
    ]
    transitions = list(p.transitions)
    index = 0
    while index < len(transitions):
        t = transitions[index]
        guard = t.guard.value
        if index + 1 < len(transitions):
            following = transitions[index + 1]
            if (t.guard is Guard.EQ and following.guard is Guard.NEQ
                    and t.states() == following.states()):
                guard = "*"
                index += 1
        lines.append(f"{t.q1}, {t.q2} -> {t.q3}, {t.q4} [{guard}]")
        index += 1
    return "\n".join(lines) + "\n"


def serialize_config(c: CanonicalConfiguration, inline: bool = False) -> str:
    """Данные получают имена d1, d2, ... в каноническом порядке"""
    parts = [f"datum d{i}: {profile}" for i, profile in enumerate(c.profiles(), start=1)]
    if inline:
        return "; ".join(parts)
    return "".join(part + "\n" for part in parts)


def _serialize_simple(psi: SimpleIntervalPredicate) -> str:
    if psi.width == 0:
        return "true"
    names = list(psi.variables) if len(psi.variables) == psi.width else [f"x{j + 1}" for j in range(psi.width)]
    constraints = [f"#({q},{names[j]}) in {interval}" for q, j, interval in psi.bounds]
    body = " & ".join(constraints) if constraints else "true"
    return f"E {' '.join(names)} . {body}"


def serialize_predicate(phi: IntervalPredicate) -> str:
    if isinstance(phi, SimpleIntervalPredicate):
        return _serialize_simple(phi)
    if isinstance(phi, PredNot):
        return f"!({serialize_predicate(phi.child)})"
    symbol = "&" if isinstance(phi, PredAnd) else "|"
    if not isinstance(phi, (PredAnd, PredOr)):
        raise TypeError(f"Неизвестный узел предиката: {phi!r}")
    return f"({serialize_predicate(phi.left)}) {symbol} ({serialize_predicate(phi.right)})"


def serialize_gre(e: GreNode) -> str:
    if isinstance(e, Atom):
        return f"pred {quote(serialize_predicate(e.predicate))}"
    if isinstance(e, GreUnion):
        return f"union({serialize_gre(e.left)}, {serialize_gre(e.right)})"
    if isinstance(e, Complement):
        return f"compl({serialize_gre(e.child)})"
    if isinstance(e, PostStar):
        return f"post*({serialize_gre(e.child)})"
    if isinstance(e, PreStar):
        return f"pre*({serialize_gre(e.child)})"
    raise TypeError(f"Неизвестный узел выражения: {e!r}")


def serialize_run(r: ConcreteRun) -> str:
    lines: List[str] = [f"agent {a} datum {r.datum[a]} at {r.start[a]}" for a in r.agents]
    lines += [f"step {s.actor} obs {s.observed} via {s.transition}" for s in r.steps]
    return "\n".join(lines) + "\n"


def serialize_cm(machine: CounterMachine) -> str:
    lines = []
    for instruction in machine.instructions:
        if isinstance(instruction, Halt):
            lines.append("halt")
        elif isinstance(instruction, Inc):
            lines.append(f"inc {instruction.counter}")
        elif isinstance(instruction, Dec):
            lines.append(f"dec {instruction.counter}")
        else:
            lines.append(f"jz {instruction.counter} {instruction.target}")
    return "\n".join(lines) + "\n"