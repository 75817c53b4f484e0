"""
Производные задачи верификации.
Корректная определенность, корректность, достижимость множеств и домашние пространства.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional

from core.errors import ProtocolError
from core.protocol import Output, Protocol
from logic.gre import (
    Atom,
    Complement,
    GreNode,
    PostStar,
    PreStar,
    SearchBounds,
    Verdict,
    VerdictKind,
    build_initial_gre,
    build_unstable_gre,
    build_wellspec_gre,
    emptiness,
    intersect,
)
from logic.predicates import IntervalPredicate, PredNot, states_of

logger = logging.getLogger(__name__)


def check_well_specified(p: Protocol, bounds: SearchBounds, node_budget: Optional[int] = None,
                         include_empty: bool = False) -> Verdict:
    """Пустота E_ws в пределах bounds: протокол корректно определен на проверенных конфигурациях"""
    logger.info(f"Проверка корректной определенности, границы {bounds}")
    return emptiness(p, build_wellspec_gre(p, include_empty), bounds, node_budget)


@dataclass(frozen=True)
class CorrectnessResult:
    """Вердикты по обеим ветвям выхода"""
    branches: Dict[Output, Verdict]

    @property
    def kind(self) -> VerdictKind:
        kinds = [v.kind for v in self.branches.values()]
        if VerdictKind.NON_EMPTY in kinds:
            return VerdictKind.NON_EMPTY
        if VerdictKind.INCONCLUSIVE in kinds:
            return VerdictKind.INCONCLUSIVE
        return VerdictKind.EMPTY

    @property
    def is_correct(self) -> bool:
        return self.kind is VerdictKind.EMPTY


def correctness_gre(p: Protocol, phi: IntervalPredicate, value: Output,
                    include_empty: bool = False) -> GreNode:
    """Начальные конфигурации с phi = value, из которых некоторый справедливый прогон не дает value"""
    selected = Atom(phi) if value is Output.TOP else Atom(PredNot(phi))
    return intersect(intersect(build_initial_gre(p, include_empty), selected),
                     build_unstable_gre(p, value))


def check_correctness(p: Protocol, phi: IntervalPredicate, bounds: SearchBounds,
                      node_budget: Optional[int] = None,
                      include_empty: bool = False) -> CorrectnessResult:
    """
    Проверка того, что протокол вычисляет предикат phi

    Raises:
        ProtocolError: предикат упоминает неначальные состояния
    """
    outside = sorted(states_of(phi) - p.initial)
    if outside:
        raise ProtocolError("Предикат должен говорить только о начальных состояниях",
                            [f"состояние {q} не начальное" for q in outside])

    branches = {}
    for value in (Output.TOP, Output.BOT):
        logger.info(f"Проверка корректности, ветвь {value.value}")
        branches[value] = emptiness(p, correctness_gre(p, phi, value, include_empty),
                                    bounds, node_budget)
    return CorrectnessResult(branches)


def check_set_reachability(p: Protocol, source: GreNode, target: GreNode, bounds: SearchBounds,
                           node_budget: Optional[int] = None) -> Verdict:
    """Пустота E1 ∩ Pre*(E2): NonEmpty означает, что E2 достижимо из E1"""
    return emptiness(p, intersect(source, PreStar(target)), bounds, node_budget)


def check_home_space(p: Protocol, home: GreNode, bounds: SearchBounds,
                     node_budget: Optional[int] = None, include_empty: bool = False,
                     initial: Optional[GreNode] = None) -> Verdict:
    """
    Пустота Post*(I) ∩ дополнение Pre*(home): Empty означает домашнее пространство

    Args:
        initial: Подмножество начальных конфигураций вместо всего I
    """
    start = initial if initial is not None else build_initial_gre(p, include_empty)
    expression = intersect(PostStar(start), Complement(PreStar(home)))
    return emptiness(p, expression, bounds, node_budget)

