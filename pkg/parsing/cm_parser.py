"""
Разбор двухсчетчиковых машин.
По инструкции на строку: inc c, dec c, jz c <метка или номер>, halt; метки вида name:.
"""

import logging
import re
from typing import Dict, List, Tuple

from core.errors import ParseError
from parsing.base import IDENT, column_of, source_lines
from reductions.counter_machine import CounterMachine, Dec, Halt, Inc, Instruction, ZeroTest

logger = logging.getLogger(__name__)


class MachineParser:
    """Парсер машин; jz принимает метку или номер инструкции (с 1)"""

    def __init__(self):
        self.label_pattern = re.compile(rf"^({IDENT})\s*:\s*(.*)$")
        self.counter_pattern = re.compile(r"^(inc|dec)\s+(x|y)$")
        self.jump_pattern = re.compile(rf"^jz\s+(x|y)\s+({IDENT})$")

    def parse(self, text: str) -> CounterMachine:
        """
        Разбор машины

        Raises:
            ParseError: синтаксическая ошибка, неизвестная метка или некорректная машина
        """
        labels: Dict[str, int] = {}
        raw: List[Tuple[int, str, str]] = []
        for number, line in source_lines(text):
            body = line
            match = self.label_pattern.match(line)
            if match:
                label, body = match.groups()
                if label in labels:
                    raise ParseError(f"метка {label} повторяется", number)
                labels[label] = len(raw) + 1
                if not body:
                    raise ParseError("после метки ожидалась инструкция", number, len(line) + 1)
            raw.append((number, line, body.strip()))

        instructions: List[Instruction] = []
        last = 1
        for number, line, body in raw:
            last = number
            instructions.append(self._instruction(body, number, line, labels))

        machine = CounterMachine(tuple(instructions))
        problems = machine.validate()
        if problems:
            raise ParseError(problems[0], last)
        logger.debug(f"Разобрана машина из {machine.size} инструкций")
        return machine

    def _instruction(self, body: str, number: int, line: str, labels: Dict[str, int]) -> Instruction:
        if body == "halt":
            return Halt()
        match = self.counter_pattern.match(body)
        if match:
            op, counter = match.groups()
            return Inc(counter) if op == "inc" else Dec(counter)
        match = self.jump_pattern.match(body)
        if match:
            counter, target = match.groups()
            if target.isdigit():
                return ZeroTest(counter, int(target))
            if target not in labels:
                raise ParseError(f"неизвестная метка {target}", number, column_of(line, target))
            return ZeroTest(counter, labels[target])
        raise ParseError(f"ожидалось inc x|y, dec x|y, jz x|y <метка> или halt, получено '{body}'",
                         number, column_of(line, body))


def parse_cm(text: str) -> CounterMachine:
    return MachineParser().parse(text)
