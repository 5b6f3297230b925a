import random

import pytest

from reqpat.conditions import (
    And,
    ConditionSyntaxError,
    Const,
    Not,
    Or,
    Ref,
    State,
    Trace,
    condition_atoms,
    eval_condition,
    format_condition,
    is_valid_atom,
    parse_condition,
)

from helpers import random_condition


def test_ref_membership():
    assert eval_condition(Ref("at_2400"), State({"at_2400"})) is True
    assert eval_condition(Ref("at_2400"), State()) is False


def test_const_true_on_empty_state():
    assert eval_condition(Const(True), State()) is True
    assert eval_condition(Const(False), State({"p"})) is False


def test_boolean_evaluation():
    state = State({"p", "q"})
    assert eval_condition(And(Ref("p"), Not(Ref("q"))), state) is False
    assert eval_condition(Or(Ref("x_missing"), Ref("q")), state) is True


@pytest.mark.parametrize("name", ["p", "at_2400", "_x", "a1_b2"])
def test_valid_atoms(name):
    assert is_valid_atom(name)
    Ref(name)


@pytest.mark.parametrize("name", ["", "9bad", "Upper", "has space", "has-dash", "p!"])
def test_invalid_atoms(name):
    assert not is_valid_atom(name)
    with pytest.raises(ValueError):
        Ref(name)


def test_state_and_trace_are_values():
    assert State({"p"}) == State(["p", "p"])
    assert Trace.of({"p"}, set()) == Trace([State({"p"}), State()])
    assert len(Trace.of()) == 0
    assert list(Trace.of({"p"})[0].atoms) == ["p"]


def test_parse_condition_grammar():
    assert parse_condition("true") == Const(True)
    assert parse_condition("!p && q || r") == Or(And(Not(Ref("p")), Ref("q")), Ref("r"))
    assert parse_condition("!(p || q)") == Not(Or(Ref("p"), Ref("q")))


@pytest.mark.parametrize("text", ["", "p &&", "(p", "p q", "9bad", "p ->"])
def test_parse_condition_errors_carry_position(text):
    with pytest.raises(ConditionSyntaxError) as exc_info:
        parse_condition(text)
    assert exc_info.value.position >= 0


def test_format_parse_round_trip_random():
    rng = random.Random(20240817)
    for _ in range(500):
        cond = random_condition(rng, depth=4)
        assert parse_condition(format_condition(cond)) == cond


def test_condition_atoms():
    cond = And(Ref("p"), Or(Not(Ref("q")), Const(True)))
    assert condition_atoms(cond) == frozenset({"p", "q"})
