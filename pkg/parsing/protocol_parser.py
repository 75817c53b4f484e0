"""
Разбор текстового описания протокола.
Секции states, init, output и trans; условие * означает оба условия на данные.
"""

import logging
import re
from typing import Dict, List, Optional, Tuple

from core.errors import ParseError
from core.protocol import Guard, Output, Protocol, Transition, make_protocol, validate_protocol
from parsing.base import IDENT, column_of, require_ident, source_lines

logger = logging.getLogger(__name__)

GUARDS = {"=": (Guard.EQ,), "!=": (Guard.NEQ,), "*": (Guard.EQ, Guard.NEQ)}
SECTIONS = ("states", "init", "output", "trans")


class ProtocolParser:
    """Парсер протоколов"""

    def __init__(self):
        # q1, q2 -> q3, q4 [guard]
        self.full_pattern = re.compile(
            rf"^({IDENT})\s*,\s*({IDENT})\s*->\s*({IDENT})\s*,\s*({IDENT})\s*\[([^\]]*)\]$"
        )
        # from -> to obs observed [guard]
        self.observation_pattern = re.compile(
            rf"^({IDENT})\s*->\s*({IDENT})\s+obs\s+({IDENT})\s*\[([^\]]*)\]$"
        )
        self.output_pattern = re.compile(rf"({IDENT})\s*=\s*(\S+)")

    def parse(self, text: str) -> Protocol:
        """
        Разбор протокола

        Raises:
            ParseError: синтаксическая ошибка или ссылка на необъявленное состояние
        """
        seen: Dict[str, int] = {}
        states: List[str] = []
        initial: List[str] = []
        output: Dict[str, Output] = {}
        transitions: List[Transition] = []
        pending: List[Tuple[int, str, Transition]] = []
        section: Optional[str] = None

        for number, line in source_lines(text):
            head, _, rest = line.partition(" ")
            if head in SECTIONS:
                if head in seen:
                    raise ParseError(f"секция {head} повторяется (первая в строке {seen[head]})", number)
                seen[head] = number
                section = head
                rest = rest.strip()
                if head == "states":
                    states = self._names(rest, number, line)
                elif head == "init":
                    initial = self._names(rest, number, line)
                elif head == "output":
                    output = self._outputs(rest, number, line)
                elif rest:
                    raise ParseError("после trans переходы пишутся с новой строки", number,
                                     column_of(line, rest))
                continue
            if section != "trans":
                raise ParseError(f"неизвестная секция '{head}'", number)
            for t in self._transitions(line, number):
                pending.append((number, line, t))

        for header in SECTIONS:
            if header not in seen:
                raise ParseError(f"отсутствует секция {header}", 1)

        known = set(states)
        for number, line, t in pending:
            for q in t.states():
                if q not in known:
                    raise ParseError(f"необъявленное состояние {q}", number, column_of(line, q))
            transitions.append(t)

        protocol = make_protocol(states, transitions, initial, output)
        diagnostics = validate_protocol(protocol)
        if diagnostics:
            raise ParseError(diagnostics[0], seen["output"] if "Выход" in diagnostics[0] else seen["states"])
        logger.debug(f"Разобран протокол: {protocol.size} состояний, {len(protocol.transitions)} переходов")
        return protocol

    def _names(self, rest: str, number: int, line: str) -> List[str]:
        names = rest.split()
        if not names:
            raise ParseError("список пуст", number, len(line) + 1)
        for name in names:
            require_ident(name, number, column_of(line, name), "имя состояния")
        return names

    def _outputs(self, rest: str, number: int, line: str) -> Dict[str, Output]:
        output = {}
        consumed = self.output_pattern.sub("", rest).strip()
        if consumed:
            raise ParseError(f"непонятный фрагмент '{consumed}'", number, column_of(line, consumed))
        for state, value in self.output_pattern.findall(rest):
            if value not in ("top", "bot"):
                raise ParseError(f"выход должен быть top или bot, получено '{value}'",
                                 number, column_of(line, value))
            output[state] = Output(value)
        return output

    def _guards(self, token: str, number: int, line: str) -> Tuple[Guard, ...]:
        token = token.strip()
        if token not in GUARDS:
            raise ParseError(f"неизвестное условие '{token}', ожидалось =, != или *",
                             number, column_of(line, "[") + 1)
        return GUARDS[token]

    def _transitions(self, line: str, number: int) -> List[Transition]:
        match = self.full_pattern.match(line)
        if match:
            q1, q2, q3, q4, guard = match.groups()
            return [Transition(q1, q2, g, q3, q4) for g in self._guards(guard, number, line)]
        match = self.observation_pattern.match(line)
        if match:
            source, target, observed, guard = match.groups()
            return [Transition(observed, source, g, observed, target)
                    for g in self._guards(guard, number, line)]
        raise ParseError("ожидался переход 'q1, q2 -> q3, q4 [g]' или 'q -> q2 obs q1 [g]'", number)


def parse_protocol(text: str) -> Protocol:
    return ProtocolParser().parse(text)
