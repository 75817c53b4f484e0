"""
Модели отчетов команд.
Один pydantic-отчет выводится либо как JSON, либо как текст с тем же содержимым.
"""

import logging
from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

from logic.gre import SearchBounds, Verdict, VerdictKind
from parsing.serializer import serialize_config

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

DetailValue = Union[str, int, bool, None, List[str]]


class Status(str, Enum):
    """Итог команды, определяющий код возврата"""
    DEFINITIVE = "definitive"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


EXIT_CODES = {Status.DEFINITIVE: 0, Status.VIOLATED: 1, Status.INCONCLUSIVE: 2}
INPUT_ERROR_EXIT_CODE = 3


class BoundsModel(BaseModel):
    max_data: int
    max_agents_per_datum: int

    @classmethod
    def of(cls, bounds: SearchBounds) -> "BoundsModel":
        return cls(max_data=bounds.max_data, max_agents_per_datum=bounds.max_agents_per_datum)


class Report(BaseModel):
    """Отчет команды CLI"""
    schema_version: str = SCHEMA_VERSION
    command: str
    status: Status = Status.DEFINITIVE
    verdict: Optional[str] = None
    summary: str = ""
    bounds: Optional[BoundsModel] = None
    witness: Optional[str] = None
    checked: Optional[int] = None
    result: Optional[str] = None
    details: Dict[str, DetailValue] = Field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def verdict_report(command: str, verdict: Verdict, expression: str = "E") -> Report:
    """
    Отчет по вердикту проверки пустоты

    NonEmpty означает найденный контрпример (код 1), Inconclusive исчерпанный бюджет (код 2).
    """
    status = {
        VerdictKind.EMPTY: Status.DEFINITIVE,
        VerdictKind.NON_EMPTY: Status.VIOLATED,
        VerdictKind.INCONCLUSIVE: Status.INCONCLUSIVE,
    }[verdict.kind]
    if verdict.kind is VerdictKind.EMPTY:
        summary = f"Empty({expression}) up to bounds {verdict.bounds}"
    elif verdict.kind is VerdictKind.NON_EMPTY:
        summary = f"NonEmpty({expression}): witness {serialize_config(verdict.witness, inline=True) or '{}'}"
    else:
        summary = f"Inconclusive({expression}): {verdict.reason}"
    return Report(
        command=command,
        status=status,
        verdict=verdict.kind.value,
        summary=summary,
        bounds=BoundsModel.of(verdict.bounds),
        witness=serialize_config(verdict.witness, inline=True) if verdict.witness is not None else None,
        checked=verdict.checked,
    )


def _render_value(value: DetailValue) -> str:
    if isinstance(value, list):
        return ", ".join(value) if value else "-"
    if value is None:
        return "-"
    return str(value)


def render_text(report: Report) -> str:
    """Текстовое представление отчета: поле на строку, детали в алфавитном порядке"""
    lines = [f"command: {report.command}", f"status: {report.status.value}"]
    if report.verdict is not None:
        lines.append(f"verdict: {report.verdict}")
    if report.summary:
        lines.append(f"summary: {report.summary}")
    if report.bounds is not None:
        lines.append(f"bounds: {report.bounds.max_data} data, "
                     f"{report.bounds.max_agents_per_datum} agents/datum")
    if report.witness is not None:
        lines.append(f"witness: {report.witness or '{}'}")
    if report.checked is not None:
        lines.append(f"checked: {report.checked}")
    for key in sorted(report.details):
        lines.append(f"{key}: {_render_value(report.details[key])}")
    if report.result is not None:
        lines.append("result:")
        lines.append(report.result.rstrip("\n"))
    return "\n".join(lines) + "\n"


def render(report: Report, output_format: str) -> str:
    if output_format == "json":
        return report.model_dump_json(indent=2) + "\n"
    return render_text(report)
