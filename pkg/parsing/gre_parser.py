"""
Разбор обобщенных выражений достижимости.
pred "..." или pred { ... }, union, inter, compl, post*, pre*.
"""

import logging

from core.errors import ParseError
from logic.gre import Atom, Complement, GreNode, GreUnion, PostStar, PreStar, intersect
from parsing.base import TokenStream, unquote
from parsing.predicate_parser import PredicateParser

logger = logging.getLogger(__name__)


class GreParser:
    """Рекурсивный спуск по тому же потоку лексем, что и у предикатов"""

    def __init__(self, stream: TokenStream):
        self.stream = stream

    def parse(self) -> GreNode:
        e = self.expression()
        self.stream.expect_end()
        return e

    def expression(self) -> GreNode:
        stream = self.stream
        token = stream.expect_name("выражение")
        if token.value == "pred":
            return self._atom()
        if token.value in ("post", "pre"):
            stream.expect("*")
            child = self._arguments(1)[0]
            return PostStar(child) if token.value == "post" else PreStar(child)
        if token.value == "compl":
            return Complement(self._arguments(1)[0])
        if token.value == "union":
            left, right = self._arguments(2)
            return GreUnion(left, right)
        if token.value == "inter":
            left, right = self._arguments(2)
            return intersect(left, right)
        raise ParseError(f"неизвестная операция '{token.value}'", token.line, token.column)

    def _arguments(self, count: int):
        self.stream.expect("(")
        result = [self.expression()]
        for _ in range(count - 1):
            self.stream.expect(",")
            result.append(self.expression())
        self.stream.expect(")")
        return result

    def _atom(self) -> Atom:
        stream = self.stream
        if stream.accept("{"):
            phi = PredicateParser(stream).disjunction()
            stream.expect("}")
            return Atom(phi)
        token = stream.peek()
        if token.kind != "string":
            raise stream.error("после pred ожидалась строка в кавычках или { предикат }")
        stream.next()
        try:
            return Atom(PredicateParser(TokenStream(unquote(token))).parse())
        except ParseError as error:
            # позиция внутри строки пересчитывается в позицию в исходном тексте
            line = token.line + error.line - 1
            column = token.column + error.column if error.line == 1 else error.column
            raise ParseError(error.reason, line, column)


def parse_gre(text: str) -> GreNode:
    """
    Разбор выражения

    Raises:
        ParseError: синтаксическая ошибка с позицией
    """
    e = GreParser(TokenStream(text)).parse()
    logger.debug("Разобрано выражение достижимости")
    return e
