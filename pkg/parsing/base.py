"""
Общие средства разбора текстовых форматов.
Построчное чтение с комментариями и поток лексем с позициями для выражений.
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from core.errors import ParseError

logger = logging.getLogger(__name__)

# Идентификатор: буквы, цифры, _, ~, ', @ и точки между ними
IDENT = r"[A-Za-z0-9_~'@]+(?:\.[A-Za-z0-9_~'@]+)*"
IDENT_RE = re.compile(rf"^{IDENT}$")
NAT_RE = re.compile(r"^\d+$")

COMMENT = "//"


def source_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Непустые строки без комментариев с номерами (с 1)"""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(COMMENT, 1)[0].strip()
        if line:
            yield number, line


def column_of(raw_line: str, fragment: str) -> int:
    index = raw_line.find(fragment)
    return index + 1 if index >= 0 else 1


def require_ident(value: str, line: int, column: int = 1, what: str = "идентификатор") -> str:
    if not IDENT_RE.match(value):
        raise ParseError(f"ожидался {what}, получено '{value}'", line, column)
    return value


def require_nat(value: str, line: int, column: int = 1) -> int:
    if not NAT_RE.match(value):
        raise ParseError(f"ожидалось натуральное число, получено '{value}'", line, column)
    return int(value)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


class TokenStream:
    """Поток лексем выражений (предикаты и выражения достижимости)"""

    def __init__(self, text: str):
        self.tokens_pattern = re.compile(
            r"(?P<ws>\s+)"
            r"|(?P<comment>//[^\n]*)"
            r"|(?P<string>\"(?:[^\"\\]|\\.)*\")"
            r"|(?P<sym>#\(|>=|!=|[()\[\],.&|!=*{}])"
            rf"|(?P<name>{IDENT})"
        )
        self.tokens = self._tokenize(text)
        self.position = 0

    def _tokenize(self, text: str) -> List[Token]:
        tokens = []
        line, line_start, index = 1, 0, 0
        while index < len(text):
            match = self.tokens_pattern.match(text, index)
            if match is None:
                raise ParseError(f"неожиданный символ '{text[index]}'", line, index - line_start + 1)
            kind = match.lastgroup
            value = match.group()
            if kind not in ("ws", "comment"):
                tokens.append(Token(kind, value, line, index - line_start + 1))
            for offset, char in enumerate(value):
                if char == "\n":
                    line += 1
                    line_start = index + offset + 1
            index = match.end()
        tokens.append(Token("end", "", line, index - line_start + 1))
        return tokens

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.position + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        token = self.peek()
        if token.kind != "end":
            self.position += 1
        return token

    def at(self, value: str, ahead: int = 0) -> bool:
        token = self.peek(ahead)
        return token.kind in ("sym", "name") and token.value == value

    def accept(self, value: str) -> Optional[Token]:
        if self.at(value):
            return self.next()
        return None

    def expect(self, value: str) -> Token:
        token = self.peek()
        if not self.at(value):
            shown = token.value or "конец текста"
            raise ParseError(f"ожидалось '{value}', получено '{shown}'", token.line, token.column)
        return self.next()

    def expect_name(self, what: str = "идентификатор") -> Token:
        token = self.peek()
        if token.kind != "name":
            shown = token.value or "конец текста"
            raise ParseError(f"ожидался {what}, получено '{shown}'", token.line, token.column)
        return self.next()

    def expect_nat(self) -> int:
        token = self.expect_name("натуральное число")
        return require_nat(token.value, token.line, token.column)

    def expect_end(self):
        token = self.peek()
        if token.kind != "end":
            raise ParseError(f"лишний текст начиная с '{token.value}'", token.line, token.column)

    def error(self, reason: str) -> ParseError:
        token = self.peek()
        return ParseError(reason, token.line, token.column)


def unquote(token: Token) -> str:
    """Содержимое строки в кавычках без экранирования"""
    return re.sub(r"\\(.)", r"\1", token.value[1:-1])


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'
