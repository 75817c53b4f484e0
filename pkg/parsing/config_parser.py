"""
Разбор конфигураций: по строке (или фрагменту через ;) на данное.
Имена данных служат только для диагностики, конфигурация канонизируется.
"""

import logging
import re
from collections import Counter
from typing import Iterable, Optional

from core.configuration import CanonicalConfiguration, DatumProfile
from core.errors import ParseError
from parsing.base import IDENT, column_of, source_lines

logger = logging.getLogger(__name__)


class ConfigParser:
    """Парсер конфигураций"""

    def __init__(self):
        self.datum_pattern = re.compile(rf"^datum\s+({IDENT})\s*:\s*(.*)$")
        self.count_pattern = re.compile(rf"^({IDENT})\s*=\s*(\d+)$")

    def parse(self, text: str, states: Optional[Iterable[str]] = None) -> CanonicalConfiguration:
        """
        Разбор конфигурации

        Args:
            states: Допустимые состояния; если заданы, прочие отклоняются

        Raises:
            ParseError: синтаксическая ошибка, повтор данного или неизвестное состояние
        """
        known = set(states) if states is not None else None
        profiles = []
        names = {}
        for number, line in source_lines(text):
            for fragment in (part.strip() for part in line.split(";")):
                if not fragment:
                    continue
                match = self.datum_pattern.match(fragment)
                if not match:
                    raise ParseError("ожидалось 'datum <имя>: q=k, ...'", number, column_of(line, fragment))
                name, body = match.groups()
                if name in names:
                    raise ParseError(f"данное {name} уже описано в строке {names[name]}",
                                     number, column_of(line, fragment))
                names[name] = number
                profiles.append(self._profile(body, number, line, known))

        result = CanonicalConfiguration.from_profiles(profiles)
        logger.debug(f"Разобрана конфигурация: {result.data_count} данных, {result.agent_count} агентов")
        return result

    def _profile(self, body: str, number: int, line: str, known) -> DatumProfile:
        counts: Counter = Counter()
        for item in (part.strip() for part in body.split(",")):
            match = self.count_pattern.match(item)
            if not match:
                raise ParseError(f"ожидалось 'состояние=число', получено '{item}'",
                                 number, column_of(line, item) if item else len(line) + 1)
            state, value = match.group(1), int(match.group(2))
            if known is not None and state not in known:
                raise ParseError(f"неизвестное состояние {state}", number, column_of(line, item))
            counts[state] += value
        if sum(counts.values()) == 0:
            raise ParseError("у данного должен быть хотя бы один агент", number)
        return DatumProfile.of(counts)


def parse_config(text: str, states: Optional[Iterable[str]] = None) -> CanonicalConfiguration:
    return ConfigParser().parse(text, states)
