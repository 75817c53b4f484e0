"""
Граничные функции f, g, alpha, beta и оценка размера свидетеля.
Все значения считаются точно в целых числах произвольной длины.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from logic.gre import length, norm

logger = logging.getLogger(__name__)


def poly1(s: int) -> int:
    """poly1(s) = (1 + s^3) * s, так что f(n) <= n * poly1(s) при n >= 1"""
    return (1 + s ** 3) * s


def poly2(s: int) -> int:
    """poly2(s) = 2s^4 + 2s^3 + s + 1, так что g(n, M) <= M * (n+1)^poly2(s) при n, M >= 1"""
    return 2 * s ** 4 + 2 * s ** 3 + s + 1


def poly(s: int) -> int:
    return poly1(s) * poly2(s)


def bound_f(n: int, s: int) -> int:
    """f(n) = (n + s^3) * s"""
    return (n + s ** 3) * s


def bound_g(n: int, m: int, s: int) -> int:
    """g(n, M) = (M + (s^3 + 1)^(s^3 + s^2)) * (n + 1)^s"""
    return (m + (s ** 3 + 1) ** (s ** 3 + s ** 2)) * (n + 1) ** s


def alpha(s: int, norm: int, length: int) -> int:
    """alpha = ||E|| * poly1(s)^|E|"""
    return norm * poly1(s) ** length


def beta_exponent(s: int, length: int) -> int:
    """Показатель в beta = ||E||^(poly(s) * |E|^2)"""
    return poly(s) * length ** 2


def witness_agent_bound(n: int, m: int, s: int) -> int:
    """n * |P| * |Boxes_n| * M"""
    return n * s * (n + 1) ** s * m


def power_bits(base: int, exponent: int) -> int:
    """Верхняя оценка числа бит в base^exponent"""
    if base <= 1 or exponent == 0:
        return 1
    return base.bit_length() * exponent


@dataclass(frozen=True)
class BoundReport:
    """Значения граничных функций для протокола, выражения и порогов (n, M)"""
    protocol_size: int
    expression_length: int
    expression_norm: int
    n: int
    m: int
    f_value: int
    g_value: int
    alpha: int
    beta_base: int
    beta_exponent: int
    beta: Optional[int]
    witness_agent_bound: int


def bound_report(p, e, n: int, m: int, max_bits: int = 1_000_000) -> BoundReport:
    """
    Отчет о граничных функциях

    Args:
        p: Протокол
        e: Обобщенное выражение достижимости
        n: Порог коробок
        m: Порог числа данных
        max_bits: beta вычисляется явно, только если помещается в столько бит
    """
    if n < 1 or m < 1:
        raise ValueError("Пороги n и M должны быть не меньше 1")
    s = p.size
    e_length = length(e)
    e_norm = norm(e)
    exponent = beta_exponent(s, e_length)
    beta_value = e_norm ** exponent if power_bits(e_norm, exponent) <= max_bits else None
    if beta_value is None:
        logger.info(f"beta = {e_norm}^{exponent} слишком велико, выводится в виде степени")

    return BoundReport(
        protocol_size=s,
        expression_length=e_length,
        expression_norm=e_norm,
        n=n,
        m=m,
        f_value=bound_f(n, s),
        g_value=bound_g(n, m, s),
        alpha=alpha(s, e_norm, e_length),
        beta_base=e_norm,
        beta_exponent=exponent,
        beta=beta_value,
        witness_agent_bound=witness_agent_bound(n, m, s),
    )
