"""
Общие фикстуры тестов: протоколы, предикаты и прогоны из каталога samples.
"""

import random
from pathlib import Path

import pytest

from parsing.cm_parser import parse_cm
from parsing.config_parser import parse_config
from parsing.predicate_parser import parse_predicate
from parsing.protocol_parser import parse_protocol
from parsing.run_parser import parse_run

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def sample_path(name: str) -> str:
    return str(SAMPLES / name)


def read_sample(name: str) -> str:
    return (SAMPLES / name).read_text(encoding="utf-8")


@pytest.fixture
def ex24():
    """Пара q0/q1 одного данного дает q2, две q2 разных данных дают q3"""
    return parse_protocol(read_sample("ex2_4.pp"))


@pytest.fixture
def ex23():
    return parse_protocol(read_sample("ex2_3.pp"))


@pytest.fixture
def ex28():
    return parse_predicate(read_sample("ex2_8.pred"))


@pytest.fixture
def two_full(ex24):
    return parse_config(read_sample("cfg_two_full.cfg"), ex24.states)


@pytest.fixture
def fig2():
    return parse_protocol(read_sample("fig2.pp"))


@pytest.fixture
def fig2_run():
    return parse_run(read_sample("fig2.run"))


@pytest.fixture
def inc_halt():
    return parse_cm(read_sample("inc_halt.cm"))


@pytest.fixture
def loop_machine():
    return parse_cm(read_sample("loop.cm"))


@pytest.fixture
def oscillator():
    """Два агента в a бесконечно переключают друг друга: справедливые прогоны не стабилизируются"""
    return parse_protocol(
        "states a b\n"
        "init a\n"
        "output a=top b=bot\n"
        "trans\n"
        "a -> b obs a [*]\n"
        "b -> a obs a [*]\n"
    )


@pytest.fixture
def rng():
    return random.Random(20240611)
