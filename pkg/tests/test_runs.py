"""
Тесты конкретных прогонов: воспроизведение, следы и структура наблюдений.
"""

import pytest

from core.configuration import CanonicalConfiguration
from core.errors import ProtocolError, RunError
from core.generators import random_io_protocol, random_valid_run
from runs.run import (
    RunStep,
    check_run,
    end_configuration,
    end_states,
    externally_observed_data,
    fresh_names,
    internally_observed,
    natural_key,
    observed_agents,
    prefix,
    realised_triples,
    split_trace_of,
    start_configuration,
    suffix,
    timeline,
    trace_of,
)


class TestReplay:

    def test_fig2_is_valid(self, fig2, fig2_run):
        result = check_run(fig2, fig2_run)
        assert result.valid
        assert set(result.end.values()) == {"q1"}

    def test_invalid_step_is_reported(self, fig2, fig2_run):
        broken = fig2_run.with_steps((RunStep(1, "a", "c"),) + fig2_run.steps)
        result = check_run(fig2, broken)
        assert not result.valid
        assert result.step_index == 1
        with pytest.raises(RunError) as info:
            timeline(fig2, broken)
        assert info.value.step_index == 1

    def test_guard_violation(self, fig2, fig2_run):
        # переход 2 требует разных данных, а a и c синие
        broken = fig2_run.with_steps((RunStep(2, "a", "c"),))
        assert "!=" in check_run(fig2, broken).reason

    def test_requires_immediate_observation(self, ex23, fig2_run):
        with pytest.raises(ProtocolError):
            check_run(ex23, fig2_run)

    def test_configurations(self, fig2, fig2_run):
        assert start_configuration(fig2_run) == CanonicalConfiguration.from_profiles([{"q1": 3}, {"q2": 2}])
        assert end_configuration(fig2, fig2_run) == CanonicalConfiguration.from_profiles([{"q1": 3}, {"q1": 2}])

    def test_prefix_and_suffix(self, fig2, fig2_run):
        head = prefix(fig2_run, 3)
        tail = suffix(fig2, fig2_run, 3)
        assert len(head.steps) == 2
        assert end_states(fig2, head) == tail.start
        assert end_states(fig2, tail) == end_states(fig2, fig2_run)

    def test_random_runs_are_valid(self, rng):
        for _ in range(10):
            protocol = random_io_protocol(rng, 3)
            run = random_valid_run(rng, protocol, agents=6, data=3, steps=20)
            assert check_run(protocol, run).valid


class TestTraces:

    def test_trace(self, fig2, fig2_run):
        blue = trace_of(fig2, fig2_run, "blue")
        assert blue.get("q1", "q1") == 3
        magenta = trace_of(fig2, fig2_run, "magenta")
        assert magenta.get("q2", "q1") == 2
        assert magenta.total == 2

    def test_split_trace(self, fig2, fig2_run):
        split = split_trace_of(fig2, fig2_run, "blue", 2)
        assert split.get("q1", "q2", "q1") == 1
        assert split.get("q1", "q1", "q1") == 2
        assert split.marginal() == trace_of(fig2, fig2_run, "blue")

    def test_split_trace_bounds(self, fig2, fig2_run):
        with pytest.raises(RunError):
            split_trace_of(fig2, fig2_run, "blue", 8)
        with pytest.raises(RunError):
            trace_of(fig2, fig2_run, "green")

    def test_realised_triples(self, fig2, fig2_run):
        assert realised_triples(fig2, fig2_run) == {("blue", "q1", "q1"), ("magenta", "q2", "q1")}


class TestObservations:

    def test_observed_agents(self, fig2_run):
        assert observed_agents(fig2_run, "blue") == {"a", "b", "c"}
        assert observed_agents(fig2_run, "magenta") == {"d", "e"}

    def test_external_and_internal(self, fig2_run):
        assert externally_observed_data(fig2_run) == {"blue", "magenta"}
        assert internally_observed(fig2_run, "blue")
        assert not internally_observed(fig2_run, "magenta")


class TestNames:

    def test_natural_order(self):
        assert sorted(["a10", "a2", "a1"], key=natural_key) == ["a1", "a2", "a10"]

    def test_fresh_names_skip_taken(self):
        assert fresh_names(["~a1", "a"], 2, "a") == ["~a2", "~a3"]
