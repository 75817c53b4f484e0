"""
Разбор интервальных предикатов.
Простые предикаты E x1 .. xm . #(q,x) in [a,b] & ..., связки !, &, | и скобки.
"""

import logging
from typing import Dict, List, Tuple

from core.errors import ParseError
from logic.predicates import (
    FALSE,
    TRUE,
    Interval,
    IntervalPredicate,
    PredAnd,
    PredNot,
    PredOr,
    SimpleIntervalPredicate,
    forall_single,
)
from parsing.base import TokenStream

logger = logging.getLogger(__name__)

KEYWORDS = {"E", "A", "true", "false", "in", "inf"}


class PredicateParser:
    """
    Рекурсивный спуск по потоку лексем

    Приоритет: ! сильнее &, & сильнее |. Внутри простого предиката & продолжает
    список ограничений, только если за ним следует #(.
    """

    def __init__(self, stream: TokenStream):
        self.stream = stream

    def parse(self) -> IntervalPredicate:
        phi = self.disjunction()
        self.stream.expect_end()
        return phi

    def disjunction(self) -> IntervalPredicate:
        result = self.conjunction()
        while self.stream.accept("|"):
            result = PredOr(result, self.conjunction())
        return result

    def conjunction(self) -> IntervalPredicate:
        result = self.unary()
        while self.stream.accept("&"):
            result = PredAnd(result, self.unary())
        return result

    def unary(self) -> IntervalPredicate:
        stream = self.stream
        if stream.accept("!"):
            return PredNot(self.unary())
        if stream.accept("("):
            inner = self.disjunction()
            stream.expect(")")
            return inner
        if stream.accept("true"):
            return TRUE
        if stream.accept("false"):
            return FALSE
        if stream.at("E"):
            return self.simple()
        if stream.at("A"):
            return self.universal()
        raise stream.error(f"ожидался предикат, получено '{stream.peek().value or 'конец текста'}'")

    def _variables(self) -> List[str]:
        names = []
        while not self.stream.at("."):
            token = self.stream.expect_name("переменная")
            if token.value in KEYWORDS:
                raise ParseError(f"'{token.value}' не может быть переменной", token.line, token.column)
            if token.value in names:
                raise ParseError(f"переменная {token.value} повторяется", token.line, token.column)
            names.append(token.value)
        self.stream.expect(".")
        if not names:
            raise self.stream.error("квантор без переменных")
        return names

    def _constraints(self, variables: List[str]) -> Dict[Tuple[str, int], Interval]:
        bounds: Dict[Tuple[str, int], Interval] = {}
        if self.stream.accept("true"):
            return bounds
        while True:
            start = self.stream.expect("#(")
            state = self.stream.expect_name("имя состояния").value
            self.stream.expect(",")
            var = self.stream.expect_name("переменная")
            if var.value not in variables:
                raise ParseError(f"необъявленная переменная {var.value}", var.line, var.column)
            self.stream.expect(")")
            key = (state, variables.index(var.value))
            if key in bounds:
                raise ParseError(f"повторное ограничение для #({state},{var.value})", start.line, start.column)
            bounds[key] = self.interval()
            if not (self.stream.at("&") and self.stream.at("#(", ahead=1)):
                return bounds
            self.stream.next()

    def interval(self) -> Interval:
        stream = self.stream
        token = stream.peek()
        try:
            if stream.accept("="):
                value = stream.expect_nat()
                return Interval(value, value)
            if stream.accept(">="):
                return Interval(stream.expect_nat(), None)
            stream.expect("in")
            stream.expect("[")
            lower = stream.expect_nat()
            stream.expect(",")
            upper = None if stream.accept("inf") else stream.expect_nat()
            stream.expect("]")
            return Interval(lower, upper)
        except ValueError as error:
            raise ParseError(str(error), token.line, token.column)

    def simple(self) -> SimpleIntervalPredicate:
        self.stream.expect("E")
        variables = self._variables()
        bounds = self._constraints(variables)
        return SimpleIntervalPredicate.build(len(variables), bounds, variables)

    def universal(self) -> IntervalPredicate:
        token = self.stream.expect("A")
        variables = self._variables()
        if len(variables) != 1:
            raise ParseError("квантор A допускает ровно одну переменную", token.line, token.column)
        bounds = self._constraints(variables)
        return forall_single({state: interval for (state, _), interval in bounds.items()}, variables[0])


def parse_predicate(text: str) -> IntervalPredicate:
    """
    Разбор предиката

    Raises:
        ParseError: синтаксическая ошибка с позицией
    """
    phi = PredicateParser(TokenStream(text)).parse()
    logger.debug("Разобран предикат")
    return phi
