"""
Разбор конкретных прогонов.
Объявления агентов (agent a datum d at q), затем шаги (step a obs b via k).
"""

import logging
import re
from typing import Dict, List

from core.errors import ParseError
from parsing.base import IDENT, column_of, source_lines
from runs.run import ConcreteRun, RunStep

logger = logging.getLogger(__name__)


class RunParser:
    """Парсер прогонов; номера переходов считаются с 0 в порядке файла протокола"""

    def __init__(self):
        self.agent_pattern = re.compile(rf"^agent\s+({IDENT})\s+datum\s+({IDENT})\s+at\s+({IDENT})$")
        self.step_pattern = re.compile(rf"^step\s+({IDENT})\s+obs\s+({IDENT})\s+via\s+(\S+)$")

    def parse(self, text: str) -> ConcreteRun:
        """
        Разбор прогона (без воспроизведения, см. runs.run.check_run)

        Raises:
            ParseError: синтаксическая ошибка, повтор агента, шаг неизвестного агента
        """
        datum: Dict[str, str] = {}
        start: Dict[str, str] = {}
        steps: List[RunStep] = []
        for number, line in source_lines(text):
            if line.startswith("agent"):
                if steps:
                    raise ParseError("агенты объявляются до шагов", number)
                match = self.agent_pattern.match(line)
                if not match:
                    raise ParseError("ожидалось 'agent <имя> datum <данное> at <состояние>'", number)
                agent, d, q = match.groups()
                if agent in datum:
                    raise ParseError(f"агент {agent} объявлен повторно", number, column_of(line, agent))
                datum[agent] = d
                start[agent] = q
            elif line.startswith("step"):
                match = self.step_pattern.match(line)
                if not match:
                    raise ParseError("ожидалось 'step <агент> obs <агент> via <номер перехода>'", number)
                actor, observed, index = match.groups()
                for agent in (actor, observed):
                    if agent not in datum:
                        raise ParseError(f"необъявленный агент {agent}", number, column_of(line, agent))
                if not index.isdigit():
                    raise ParseError(f"номер перехода должен быть натуральным, получено '{index}'",
                                     number, column_of(line, index))
                steps.append(RunStep(int(index), actor, observed))
            else:
                raise ParseError(f"неизвестная строка '{line.split()[0]}'", number)

        logger.debug(f"Разобран прогон: {len(datum)} агентов, {len(steps)} шагов")
        return ConcreteRun(datum, start, tuple(steps))


def parse_run(text: str) -> ConcreteRun:
    return RunParser().parse(text)
