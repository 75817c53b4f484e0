"""
Иерархия исключений набора инструментов.
Каждое исключение несет сообщение и структурированные атрибуты для отчетов CLI.
"""

from typing import List, Optional


class ToolkitError(Exception):
    """Базовое исключение набора инструментов"""


class ProtocolError(ToolkitError):
    """Протокол некорректен или не подходит для операции"""

    def __init__(self, message: str, diagnostics: Optional[List[str]] = None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class StepError(ToolkitError):
    """Шаг не разрешен в данной конфигурации"""

    def __init__(self, reason: str):
        super().__init__(f"Шаг не разрешен: {reason}")
        self.reason = reason


class BudgetExceededError(ToolkitError):
    """Исчерпан бюджет узлов при обходе пространства конфигураций"""

    def __init__(self, budget: int, explored: int, frontier: int):
        super().__init__(
            f"Превышен бюджет узлов {budget}: просмотрено {explored}, в очереди {frontier}"
        )
        self.budget = budget
        self.explored = explored
        self.frontier = frontier


class EnumerationBudgetError(ToolkitError):
    """Пространство перебора контейнеров больше допустимого"""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"Требуется перебрать {required} контейнеров, бюджет {budget}"
        )
        self.required = required
        self.budget = budget


class RunError(ToolkitError):
    """Прогон некорректен или нарушено предусловие преобразования"""

    def __init__(self, reason: str, step_index: Optional[int] = None):
        where = f"шаг {step_index}: " if step_index is not None else ""
        super().__init__(f"{where}{reason}")
        self.reason = reason
        self.step_index = step_index


class MachineError(ToolkitError):
    """Некорректная двухсчетчиковая машина"""

    def __init__(self, reason: str):
        super().__init__(f"Некорректная машина: {reason}")
        self.reason = reason


class ParseError(ToolkitError):
    """Ошибка разбора текстового формата с позицией"""

    def __init__(self, reason: str, line: int, column: int = 1):
        super().__init__(f"строка {line}, столбец {column}: {reason}")
        self.reason = reason
        self.line = line
        self.column = column
