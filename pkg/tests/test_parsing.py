"""
Тесты текстовых форматов: разбор с позициями ошибок и обратная запись.
"""

import pytest

from core.configuration import CanonicalConfiguration
from core.errors import ParseError
from core.protocol import Guard, Transition
from logic.gre import Atom, Complement, GreUnion, PreStar
from logic.predicates import Interval, PredNot, SimpleIntervalPredicate, eval_predicate, predicate_metrics
from parsing.cm_parser import parse_cm
from parsing.config_parser import parse_config
from parsing.gre_parser import parse_gre
from parsing.predicate_parser import parse_predicate
from parsing.protocol_parser import parse_protocol
from parsing.run_parser import parse_run
from parsing.serializer import (
    serialize_cm,
    serialize_config,
    serialize_gre,
    serialize_predicate,
    serialize_protocol,
    serialize_run,
)
from reductions.counter_machine import Halt, Inc, ZeroTest

HEADER = "states a b\ninit a\noutput a=top b=bot\ntrans\n"


class TestProtocolFormat:

    def test_full_and_sugar_forms(self):
        p = parse_protocol(HEADER + "a, b -> b, b [!=]\nb -> a obs a [=]\n")
        assert p.transitions == (
            Transition("a", "b", Guard.NEQ, "b", "b"),
            Transition("a", "b", Guard.EQ, "a", "a"),
        )

    def test_round_trip(self, ex24, ex23):
        for p in (ex24, ex23):
            assert parse_protocol(serialize_protocol(p)) == p

    def test_undeclared_state_position(self):
        with pytest.raises(ParseError) as info:
            parse_protocol(HEADER + "a, c -> a, a [=]\n")
        assert info.value.line == 5
        assert info.value.column == 4

    def test_missing_section(self):
        with pytest.raises(ParseError):
            parse_protocol("states a\ninit a\ntrans\n")

    def test_repeated_section(self):
        with pytest.raises(ParseError):
            parse_protocol(HEADER + "states a\n")

    def test_bad_guard(self):
        with pytest.raises(ParseError) as info:
            parse_protocol(HEADER + "a -> b obs a [<]\n")
        assert info.value.line == 5

    def test_comments_are_ignored(self):
        p = parse_protocol("// протокол\n" + HEADER + "a -> b obs a [*] // оба условия\n")
        assert len(p.transitions) == 2


class TestConfigFormat:

    def test_lines_and_fragments(self, two_full):
        inline = parse_config("datum x: q0=1, q1=1; datum y: q1=1, q0=1")
        assert inline == two_full

    def test_round_trip(self, two_full):
        assert parse_config(serialize_config(two_full)) == two_full
        assert parse_config(serialize_config(two_full, inline=True)) == two_full

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_config("datum d1: q0=1\ndatum d1: q1=1")
        with pytest.raises(ParseError):
            parse_config("datum d1: q9=1", states=["q0"])
        with pytest.raises(ParseError):
            parse_config("datum d1: q0=0")
        with pytest.raises(ParseError) as info:
            parse_config("datum d1: q0=x")
        assert info.value.line == 1


class TestPredicateFormat:

    def test_sugar_equals_interval(self):
        assert parse_predicate("E x . #(q0,x) >= 1") == parse_predicate("E x . #(q0,x) in [1,inf]")
        assert parse_predicate("E x . #(q0,x) = 2") == parse_predicate("E x . #(q0,x) in [2,2]")

    def test_example_metrics(self, ex28):
        assert predicate_metrics(ex28)[:2] == (2, 1)

    def test_precedence(self):
        c = CanonicalConfiguration.from_profiles([{"q0": 1}])
        assert eval_predicate(parse_predicate("true | false & false"), c)
        assert not eval_predicate(parse_predicate("(true | false) & false"), c)
        assert isinstance(parse_predicate("!true & true").left, PredNot)

    def test_universal(self):
        phi = parse_predicate("A x . #(q0,x) in [0,1]")
        assert eval_predicate(phi, CanonicalConfiguration.from_profiles([{"q0": 1}, {"q1": 3}]))
        assert not eval_predicate(phi, CanonicalConfiguration.from_profiles([{"q0": 2}]))

    def test_round_trip(self, ex28):
        phi = parse_predicate("!(E x . #(q0,x) >= 2) | (E x y . #(q1,x) = 0 & #(q1,y) in [1,3]) & true")
        assert parse_predicate(serialize_predicate(phi)) == phi
        assert parse_predicate(serialize_predicate(ex28)) == ex28

    @pytest.mark.parametrize("text", [
        "E E . #(q0,E) >= 1",
        "E x x . true",
        "E x . #(q0,y) >= 1",
        "E x . #(q0,x) in [3,1]",
        "E x . #(q0,x) >= 1 &",
        "E . true",
    ])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_predicate(text)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_predicate("E x .\n  #(q0,y) >= 1")
        assert (info.value.line, info.value.column) == (2, 8)


class TestGreFormat:

    def test_quoted_and_braced_atoms(self):
        quoted = parse_gre('pre*(pred "E x . #(q3,x) >= 1")')
        braced = parse_gre("pre*(pred {E x . #(q3,x) >= 1})")
        assert quoted == braced
        assert quoted == PreStar(Atom(SimpleIntervalPredicate.build(1, {("q3", 0): Interval(1, None)})))

    def test_operations(self):
        e = parse_gre("union(compl(pred {true}), inter(pred {true}, post*(pred {false})))")
        assert isinstance(e, GreUnion)
        assert isinstance(e.left, Complement)

    def test_round_trip(self):
        e = parse_gre("union(pre*(compl(pred {E x . #(q1,x) = 1})), post*(pred {true}))")
        assert parse_gre(serialize_gre(e)) == e

    def test_error_inside_quoted_predicate(self):
        with pytest.raises(ParseError) as info:
            parse_gre('pre*(pred "E x . #(q3 x) >= 1")')
        assert info.value.line == 1
        assert info.value.column > len('pre*(pred "')

    def test_unknown_operation(self):
        with pytest.raises(ParseError):
            parse_gre("star(pred {true})")


class TestRunFormat:

    def test_fig2(self, fig2_run):
        assert len(fig2_run.datum) == 5
        assert len(fig2_run.steps) == 6
        assert fig2_run.data == ["blue", "magenta"]

    def test_round_trip(self, fig2_run):
        assert parse_run(serialize_run(fig2_run)) == fig2_run

    @pytest.mark.parametrize("text", [
        "agent a datum d at q\nagent a datum d at q",
        "agent a datum d at q\nstep a obs b via 0",
        "agent a datum d at q\nagent b datum d at q\nstep a obs b via x",
        "agent a datum d at q\nstep a obs a via 0\nagent b datum d at q",
        "walk a",
    ])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_run(text)


class TestMachineFormat:

    def test_labels_and_numbers(self, loop_machine):
        assert loop_machine.instructions == (ZeroTest("x", 1), Halt())
        assert parse_cm("jz x 1\nhalt") == loop_machine

    def test_round_trip(self, inc_halt):
        assert inc_halt.instructions == (Inc("x"), Halt())
        assert parse_cm(serialize_cm(inc_halt)) == inc_halt

    @pytest.mark.parametrize("text", ["inc x", "jz x nowhere\nhalt", "jump 1\nhalt", "a: inc x\na: halt"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_cm(text)
