"""
Тесты преобразований прогонов: копирование агентов и данных, ядра и нормализация.
"""

from collections import Counter

import pytest

from core.errors import RunError
from core.generators import random_io_protocol, random_valid_run
from runs.run import (
    RunStep,
    check_run,
    end_configuration,
    end_states,
    externally_observed_data,
    observed_agents,
    realised_triples,
    start_configuration,
    trace_multiset,
    trace_of,
)
from runs.transforms import agent_copycat, agents_core, data_copycat, data_core, normalize_run


def random_runs(rng, count, agents, data, steps):
    for _ in range(count):
        protocol = random_io_protocol(rng, rng.randint(2, 3))
        yield protocol, random_valid_run(rng, protocol, agents, data, steps)


class TestCopycat:

    def test_agent_copycat(self, fig2, fig2_run):
        result = agent_copycat(fig2, fig2_run, "a")
        assert check_run(fig2, result).valid
        assert result.datum["~a1"] == "blue"
        assert len(result.steps) == len(fig2_run.steps) + 2
        ends = end_states(fig2, result)
        assert ends["~a1"] == ends["a"]
        assert "~a1" not in observed_agents(result, "blue")

    def test_agent_copycat_errors(self, fig2, fig2_run):
        with pytest.raises(RunError):
            agent_copycat(fig2, fig2_run, "z")
        with pytest.raises(RunError):
            agent_copycat(fig2, fig2_run, "a", fresh="b")

    def test_data_copycat(self, fig2, fig2_run):
        result = data_copycat(fig2, fig2_run, "blue", "cyan")
        assert check_run(fig2, result).valid
        assert len(result.agents_of("cyan")) == 3
        assert trace_of(fig2, result, "cyan") == trace_of(fig2, result, "blue")
        # копии не наблюдаются агентами других данных
        assert "cyan" not in {result.datum[s.observed] for s in result.steps
                              if result.datum[s.actor] != "cyan"}

    def test_data_copycat_errors(self, fig2, fig2_run):
        with pytest.raises(RunError):
            data_copycat(fig2, fig2_run, "green")
        with pytest.raises(RunError):
            data_copycat(fig2, fig2_run, "blue", "magenta")
        with pytest.raises(RunError):
            data_copycat(fig2, fig2_run, "blue", "cyan", {"a": "d", "b": "x", "c": "y"})

    def test_random_copycats(self, rng):
        for protocol, run in random_runs(rng, 10, agents=5, data=2, steps=15):
            agent = run.agents[0]
            assert check_run(protocol, agent_copycat(protocol, run, agent)).valid
            assert check_run(protocol, data_copycat(protocol, run, run.datum[agent])).valid


class TestAgentsCore:

    def test_fig2_golden(self, fig2, fig2_run):
        result = agents_core(fig2, fig2_run)
        assert set(result.datum) == {"a", "b", "d", "e"}
        assert result.steps == (
            RunStep(0, "b", "a"),
            RunStep(1, "d", "b"),
            RunStep(1, "e", "b"),
            RunStep(3, "b", "a"),
        )
        assert realised_triples(fig2, result) == realised_triples(fig2, fig2_run)

    def test_random_runs(self, rng):
        for protocol, run in random_runs(rng, 15, agents=10, data=2, steps=30):
            result = agents_core(protocol, run)
            assert check_run(protocol, result).valid
            assert realised_triples(protocol, result) == realised_triples(protocol, run)
            limit = protocol.size ** 3
            assert all(len(result.agents_of(d)) <= limit for d in result.data)
            assert set(result.datum) <= set(run.datum)


class TestDataCore:

    def test_agent_limit(self, fig2, fig2_run):
        with pytest.raises(RunError):
            data_core(fig2, fig2_run, 2)

    def test_random_runs(self, rng):
        for protocol, run in random_runs(rng, 15, agents=8, data=8, steps=25):
            result = data_core(protocol, run, protocol.size ** 3)
            assert check_run(protocol, result).valid
            assert set(trace_multiset(protocol, result)) == set(trace_multiset(protocol, run))
            assert set(result.data) <= set(run.data)


class TestNormalize:

    def test_fig2(self, fig2, fig2_run):
        result = normalize_run(fig2, fig2_run)
        assert result.datum == fig2_run.datum
        assert result.start == fig2_run.start
        assert end_states(fig2, result) == end_states(fig2, fig2_run)

    def test_random_runs(self, rng):
        for protocol, run in random_runs(rng, 15, agents=8, data=4, steps=25):
            result = normalize_run(protocol, run)
            assert start_configuration(result) == start_configuration(run)
            assert end_states(protocol, result) == end_states(protocol, run)
            limit = protocol.size ** 3
            assert all(len(observed_agents(result, d)) <= limit for d in result.data)


class TestGeneratedRuns:

    @pytest.mark.slow
    def test_transforms_on_random_runs(self, rng):
        for _ in range(500):
            protocol = random_io_protocol(rng, rng.randint(2, 3))
            data = rng.randint(1, 6)
            run = random_valid_run(rng, protocol, rng.randint(data, 30), data, rng.randint(0, 40))
            s = protocol.size
            start, end = start_configuration(run), end_configuration(protocol, run)
            traces = trace_multiset(protocol, run)

            core = agents_core(protocol, run)
            assert check_run(protocol, core).valid
            assert all(len(core.agents_of(d)) <= s ** 3 for d in core.data)
            assert start_configuration(core).data_count == start.data_count

            k = max(len(run.agents_of(d)) for d in run.data)
            reduced = data_core(protocol, run, k)
            assert check_run(protocol, reduced).valid
            assert len(reduced.data) <= (k + 1) ** (s ** 3 + s ** 2)
            reduced_traces = trace_multiset(protocol, reduced)
            assert set(reduced_traces) == set(traces)
            assert all(reduced_traces[t] <= traces[t] for t in traces)

            normal = normalize_run(protocol, run)
            assert check_run(protocol, normal).valid
            assert start_configuration(normal) == start
            assert end_configuration(protocol, normal) == end
            assert len(externally_observed_data(normal)) <= (s ** 3 + 1) ** (s ** 3 + s ** 2)
            assert all(len(observed_agents(normal, d)) <= s ** 3 for d in normal.data)

            d = rng.choice(run.data)
            copied = data_copycat(protocol, run, d)
            assert check_run(protocol, copied).valid
            assert trace_multiset(protocol, copied) == traces + Counter({trace_of(protocol, run, d): 1})
