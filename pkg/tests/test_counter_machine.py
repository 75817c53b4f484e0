"""
Тесты двухсчетчиковых машин и их компиляции в протоколы.
"""

import itertools

import pytest

from core.configuration import CanonicalConfiguration, initial_configurations
from core.errors import MachineError
from core.protocol import Guard, Output, Transition
from core.reachability import Outcome, explore, fair_outcomes, reach_set
from reductions.counter_machine import (
    COUNTERS,
    RESERVOIR,
    SINK,
    UNIQ,
    CounterMachine,
    Dec,
    Halt,
    Inc,
    RoleKind,
    ZeroTest,
    compile_2cm,
    control_state,
    has_input_violation,
    initial_config_2cm,
    instruction_state,
    is_violation_free,
    lift,
    make_machine,
)


def sink_count(c: CanonicalConfiguration) -> int:
    return sum(c.state_total(lift(SINK, origin)) for origin in ("R", "other"))


def role_total(cp, c: CanonicalConfiguration, accepts) -> int:
    return sum(v * multiplicity for profile, multiplicity in c.entries
               for q, v in profile.counts if accepts(cp.roles[q]))


def in_program(role) -> bool:
    return role.kind in (RoleKind.INSTRUCTION, RoleKind.INSTRUCTION_PRIMED)


def violation_free_configs(cp, max_data: int, max_agents: int):
    """Начальные конфигурации без нарушений: не более одного агента other на данное"""
    reservoir = lift(RESERVOIR, "R")
    leaders = [cp.state(instruction_state(1)), cp.state(control_state("x", "idle")),
               cp.state(control_state("y", "idle"))]

    def options(leader):
        if leader is None:
            return [{reservoir: r} for r in range(1, max_agents + 1)]
        return [{leader: 1, reservoir: r} if r else {leader: 1} for r in range(max_agents)]

    extras = options(cp.state(UNIQ)) + options(None)
    result = set()
    for base in itertools.product(*(options(leader) for leader in leaders)):
        for count in range(max_data - len(leaders) + 1):
            for extra in itertools.combinations_with_replacement(extras, count):
                result.add(CanonicalConfiguration.from_profiles(base + extra))
    return result


class TestMachine:

    def test_simulation(self, inc_halt, loop_machine):
        trace = inc_halt.simulate(10)
        assert trace.halted
        assert trace.x == 1
        assert not loop_machine.simulate(100).halted

    def test_dec_on_zero(self):
        machine = make_machine([Dec("y"), Inc("y"), Halt()])
        trace = machine.simulate(10)
        assert trace.halted and trace.y == 1

    def test_zero_test_jumps(self):
        machine = make_machine([ZeroTest("x", 3), Inc("y"), Halt()])
        assert machine.simulate(10).y == 0

    @pytest.mark.parametrize("instructions", [
        [],
        [Inc("x")],
        [ZeroTest("x", 5), Halt()],
        [Inc("z"), Halt()],
    ])
    def test_invalid_machines(self, instructions):
        assert CounterMachine(tuple(instructions)).validate()
        with pytest.raises(MachineError):
            make_machine(instructions)


class TestCompilation:

    def test_shape(self, inc_halt):
        cp = compile_2cm(inc_halt)
        main = 2 * inc_halt.size + 2 + 14 + 3
        assert cp.protocol.size == 2 * main
        assert len(cp.protocol.initial) == 5
        assert len(cp.states_of_kind(RoleKind.UNIQ)) == 2

    def test_origin_never_changes(self, inc_halt):
        cp = compile_2cm(inc_halt)
        for t in cp.protocol.transitions:
            assert cp.roles[t.q1].origin == cp.roles[t.q3].origin
            assert cp.roles[t.q2].origin == cp.roles[t.q4].origin

    def test_output_marks_halt(self, inc_halt):
        cp = compile_2cm(inc_halt)
        top = cp.protocol.states_with_output(Output.TOP)
        assert sorted(top) == sorted([lift(instruction_state(2), "R"), lift(instruction_state(2), "other")])

    def test_input_violation_rules(self, inc_halt):
        cp = compile_2cm(inc_halt)
        eq_other = [t for t in cp.protocol.transitions
                    if t.guard is Guard.EQ and cp.roles[t.q1].origin == "other"
                    and cp.roles[t.q2].origin == "other"]
        assert eq_other
        assert all(t.q3 == t.q4 == lift(SINK, "other") for t in eq_other)

    def test_initial_configuration(self, inc_halt):
        cp = compile_2cm(inc_halt)
        c = initial_config_2cm(cp, 2, 1)
        assert c.data_count == 5
        assert is_violation_free(cp, c)
        crowded = CanonicalConfiguration.from_profiles([{cp.state("Uniq"): 1, cp.state("i1"): 1}])
        assert has_input_violation(cp, crowded)
        with pytest.raises(ValueError):
            initial_config_2cm(cp, 0, 1)

    def test_end_operation_for_every_instruction(self, loop_machine):
        cp = compile_2cm(loop_machine)
        for c in COUNTERS:
            rule = Transition(cp.state(control_state(c, "done")), cp.state(instruction_state(1, True)), Guard.NEQ,
                              cp.state(control_state(c, "idle")), cp.state(instruction_state(2)))
            assert rule in cp.protocol.transitions
        assert all(t.q4 != cp.state(instruction_state(3)) for t in cp.protocol.transitions)


class TestInvariants:

    MACHINE = [Inc("x"), Dec("x"), ZeroTest("y", 5), Inc("y"), Halt()]

    def test_sink_is_absorbing(self):
        cp = compile_2cm(make_machine(self.MACHINE))
        for t in cp.protocol.transitions:
            if cp.roles[t.q1].kind is RoleKind.SINK:
                assert t.q3 == t.q1
            if cp.roles[t.q2].kind is RoleKind.SINK:
                assert t.q4 == t.q2

    def test_counter_agents_follow_control_datum(self):
        cp = compile_2cm(make_machine(self.MACHINE))
        roles = cp.roles
        for t in cp.protocol.transitions:
            if RoleKind.SINK in (roles[t.q3].kind, roles[t.q4].kind):
                continue
            for before, after, partner in ((t.q1, t.q3, t.q2), (t.q2, t.q4, t.q1)):
                entering = roles[after].kind is RoleKind.COUNTER and roles[before].kind is not RoleKind.COUNTER
                leaving = roles[before].kind is RoleKind.COUNTER and roles[after].kind is not RoleKind.COUNTER
                if entering or leaving:
                    counter = roles[after].counter if entering else roles[before].counter
                    assert t.guard is Guard.EQ, t
                    assert roles[partner].kind is RoleKind.COUNTER_CONTROL and roles[partner].counter == counter, t

    @pytest.mark.slow
    @pytest.mark.parametrize("instructions,uniq", [
        ([Inc("x"), Halt()], 2),
        ([ZeroTest("x", 1), Halt()], 2),
        (MACHINE, 1),
    ])
    def test_control_counts_preserved_on_edges(self, instructions, uniq):
        cp = compile_2cm(make_machine(instructions))
        graph = explore(cp.protocol, initial_config_2cm(cp, uniq, 1))
        counted = [in_program] + [
            (lambda role, c=c: role.kind is RoleKind.COUNTER_CONTROL and role.counter == c) for c in COUNTERS
        ]
        for node in graph.nodes:
            for successor in graph.successors(node):
                assert sink_count(successor) >= sink_count(node)
                if sink_count(successor) > sink_count(node):
                    continue
                for accepts in counted:
                    assert role_total(cp, successor, accepts) == role_total(cp, node, accepts), f"{node} -> {successor}"


class TestSimulation:

    def test_halting_machine_reaches_halt(self, inc_halt):
        cp = compile_2cm(inc_halt)
        halt = cp.state(instruction_state(2))
        reachable = reach_set(cp.protocol, initial_config_2cm(cp, 1, 1))
        assert any(c.state_total(halt) == 1 and sink_count(c) == 0 for c in reachable)

    def test_looping_machine_never_halts(self, loop_machine):
        cp = compile_2cm(loop_machine)
        halt = cp.state(instruction_state(2))
        for uniq in (1, 2):
            reachable = reach_set(cp.protocol, initial_config_2cm(cp, uniq, 1))
            assert all(c.state_total(halt) == 0 for c in reachable)

    def test_violation_free_configurations(self, loop_machine):
        cp = compile_2cm(loop_machine)
        expected = {c for c in initial_configurations(cp.protocol, 4, 2) if is_violation_free(cp, c)}
        assert violation_free_configs(cp, 4, 2) == expected

    @pytest.mark.slow
    def test_looping_machine_stabilises_bot(self, loop_machine):
        cp = compile_2cm(loop_machine)
        configs = violation_free_configs(cp, 4, 3)
        assert len(configs) == 27 * 7
        for c in configs:
            assert is_violation_free(cp, c)
            assert fair_outcomes(cp.protocol, c) == {Outcome.STABILISES_BOT}, str(c)
