"""
Тесты семантики шагов, обхода достижимости и справедливых исходов.
"""

import pytest

from core.configuration import CanonicalConfiguration, DatumProfile, initial_configurations
from core.errors import BudgetExceededError, StepError
from core.generators import random_io_protocol
from core.protocol import Output
from core.reachability import (
    Direction,
    Outcome,
    StepInstance,
    apply_step,
    enabled_steps,
    explore,
    fair_outcomes,
    fair_outcomes_report,
    has_unstable_fair_run,
    predecessors,
    reach_set,
    successors,
)
from logic.predicates import eval_predicate


def config(*profiles):
    return CanonicalConfiguration.from_profiles(profiles)


class TestSteps:

    def test_eq_step_needs_both_agents_on_one_datum(self, ex24):
        lonely = config({"q0": 1}, {"q1": 1})
        assert not any(ex24.transitions[s.transition_index].q4 == "q2" for s in enabled_steps(ex24, lonely))
        paired = config({"q0": 1, "q1": 1})
        assert successors(ex24, paired) == {config({"q1": 1, "q2": 1}), config({"q0": 1, "q2": 1})}

    def test_neq_step_needs_two_data(self, ex24):
        one = config({"q2": 2})
        assert successors(ex24, one) == set()
        two = config({"q2": 1}, {"q2": 1})
        assert successors(ex24, two) == {config({"q2": 1}, {"q3": 1})}

    def test_steps_preserve_signature(self, ex23):
        c = config({"L1": 2}, {"L1": 1})
        for successor in successors(ex23, c):
            assert sorted(p.total for p in successor.profiles()) == [1, 2]

    def test_apply_step_rejects_disabled(self, ex24):
        c = config({"q0": 1}, {"q1": 1})
        q0 = DatumProfile.of({"q0": 1})
        q1 = DatumProfile.of({"q1": 1})
        with pytest.raises(StepError):
            apply_step(ex24, c, StepInstance(0, q0, q1, True))
        with pytest.raises(StepError):
            apply_step(ex24, c, StepInstance(99, q0, q1, False))

    def test_apply_enabled_step(self, ex24):
        c = config({"q0": 1, "q1": 1})
        for step in enabled_steps(ex24, c):
            assert apply_step(ex24, c, step) in successors(ex24, c)

    def test_predecessors_invert_successors(self, ex24, two_full):
        for successor in successors(ex24, two_full):
            assert two_full in predecessors(ex24, successor)


class TestExplore:

    def test_forward_and_backward(self, ex24, two_full):
        forward = reach_set(ex24, two_full)
        target = config({"q3": 2}, {"q3": 2})
        assert target in forward
        backward = reach_set(ex24, target, Direction.BACKWARD)
        assert two_full in backward

    def test_budget(self, ex24, two_full):
        with pytest.raises(BudgetExceededError) as info:
            explore(ex24, two_full, node_budget=1)
        assert info.value.budget == 1

    def test_bottom_components_of_terminal_config(self, ex24):
        c = config({"q0": 1})
        graph = explore(ex24, c)
        assert graph.bottom_components() == [frozenset({c})]


class TestFairOutcomes:

    def test_two_full_data_stabilise_top(self, ex24, two_full):
        assert fair_outcomes(ex24, two_full) == {Outcome.STABILISES_TOP}

    def test_single_datum_stabilises_bot(self, ex24):
        assert fair_outcomes(ex24, config({"q0": 1, "q1": 1})) == {Outcome.STABILISES_BOT}

    def test_oscillation_never_stabilises(self, oscillator):
        report = fair_outcomes_report(oscillator, config({"a": 2}))
        assert len(report) == 1
        assert report[0].outcomes == {Outcome.NEVER_STABILISES}
        assert report[0].size == 2
        assert has_unstable_fair_run(oscillator, config({"a": 2}), Output.TOP)
        assert has_unstable_fair_run(oscillator, config({"a": 2}), Output.BOT)

    @pytest.mark.slow
    def test_outcomes_match_predicate(self, ex24, ex28):
        for c in initial_configurations(ex24, 3, 2):
            expected = Outcome.stabilises(Output.TOP if eval_predicate(ex28, c) else Output.BOT)
            assert fair_outcomes(ex24, c) == {expected}, str(c)

    @pytest.mark.slow
    def test_parity_protocol(self, ex23):
        for c in initial_configurations(ex23, 3, 2):
            singles = all(p.total == 1 for p in c.profiles())
            value = Output.TOP if singles and c.data_count % 2 == 0 else Output.BOT
            assert fair_outcomes(ex23, c) == {Outcome.stabilises(value)}, str(c)

    def test_random_protocols_have_outcomes(self, rng):
        for _ in range(10):
            protocol = random_io_protocol(rng, 3)
            for c in initial_configurations(protocol, 2, 2):
                assert fair_outcomes(protocol, c)
