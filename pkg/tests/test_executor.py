"""Ordered event simulation: traces, rule firing, scaffolding prompts."""

import pytest

import acekit.executor as ex
from acekit import Session, load_lexicon, register_interface, scripted_env
from acekit.errors import AceError

from conftest import RICH_LEX, SIMPLEMAT_LEX, SIMPLEMAT_TEXT


@pytest.fixture
def simplemat():
    session = Session(load_lexicon(SIMPLEMAT_LEX))
    session.submit(SIMPLEMAT_TEXT)
    session.accept()
    return session


@pytest.fixture
def rich_session():
    return Session(load_lexicon(RICH_LEX))


GOLDEN_TRACE = [
    "event: the customer enters the card",
    "event: SimpleMat checks the personal code",
    "event: the customer enters the personal code",
    "event: SimpleMat rejects the card",
]


def test_golden_trace(simplemat):
    result = simplemat.execute()
    assert result.error is None
    assert result.trace == GOLDEN_TRACE


def test_trace_without_rule_firing(simplemat):
    simplemat.submit("The personal code is valid.")
    simplemat.accept()
    result = simplemat.execute()
    assert result.trace == GOLDEN_TRACE[:3]


def test_scaffold_prompt_and_answer(rich_session):
    rich_session.submit("Every customer has a card.")
    rich_session.accept()
    events = []
    result = rich_session.execute(answers=["John"],
                                  emit=lambda k, d: events.append((k, d)))
    assert result.error is None
    assert ("prompt", "Please enter a customer:") in events
    assert result.trace == ["event: John has the card"]
    dump = rich_session.kb_dump()
    assert "fact(customer(john))." in dump
    assert "fact(card(sk1(john)))." in dump
    assert "fact(have(john, sk1(john)))." in dump


def test_scaffold_prompts_each_predicate_once(rich_session):
    rich_session.submit("Every customer has a card. Every customer has a screen.")
    rich_session.accept()
    prompts = []
    result = rich_session.execute(
        answers=["John"], emit=lambda k, d: prompts.append(d) if k == "prompt" else None)
    assert result.error is None
    assert prompts == ["Please enter a customer:"]
    assert "fact(screen(sk2(john)))." in rich_session.kb_dump()


def test_refused_prompt_aborts_with_error(rich_session):
    rich_session.submit("Every customer has a card.")
    rich_session.accept()
    result = rich_session.execute(answers=[])
    assert result.error is not None
    assert "prompt" in str(result.error).lower() or result.trace == []


def test_rule_fires_at_its_source_position(rich_session):
    rich_session.submit(
        "A customer enters a card. "
        "If a customer enters a card then SimpleMat checks the card. "
        "A customer enters a screen.")
    rich_session.accept()
    result = rich_session.execute()
    assert result.trace == [
        "event: the customer enters the card",
        "event: SimpleMat checks the card",
        "event: the customer enters the screen",
    ]


def test_rule_does_not_refire_for_same_binding(rich_session):
    rich_session.submit(
        "A customer enters a card. "
        "If a customer enters a card then SimpleMat checks the card. "
        "A customer enters a screen. A woman enters a screen.")
    rich_session.accept()
    result = rich_session.execute()
    assert result.trace.count("event: SimpleMat checks the card") == 1


def test_rule_fires_per_binding(rich_session):
    rich_session.submit(
        "John enters a card. Mary enters a screen. "
        "If a customer enters a card then SimpleMat checks the customer.")
    rich_session.accept()
    # john and mary are not customers; nothing to check
    result = rich_session.execute()
    assert all("checks" not in line for line in result.trace)


def test_state_assertions_do_not_trace(rich_session):
    # "is valid" is a state, not an event
    rich_session.submit("A customer enters a card. The card is valid.")
    rich_session.accept()
    result = rich_session.execute()
    assert result.trace == ["event: the customer enters the card"]
    assert "fact(valid(1))." in rich_session.kb_dump()


def test_raw_mode_uses_terms(simplemat):
    result = simplemat.execute(raw=True)
    assert result.trace[0] == "event: 0 enters 1"


def test_interface_hook_replaces_trace_line(simplemat):
    interfaces = register_interface({}, "reject", 2, "atm.reject")
    events = []
    result = simplemat.execute(interfaces=interfaces,
                               emit=lambda k, d: events.append((k, d)))
    assert result.trace == GOLDEN_TRACE[:3]
    hooks = [d for k, d in events if k == "hook"]
    assert hooks == [{"hook": "atm.reject", "args": [3, 1]}]


def test_constraint_violation_warns_during_run(rich_session):
    # the offending fact is derived by a rule while the run sweeps, so the
    # violation surfaces as a run warning, not an accept warning
    rich_session.submit("No screen is valid.")
    rich_session.accept()
    rich_session.submit("John enters a card. Every card has a screen. Every screen is valid.")
    rich_session.accept()
    result = rich_session.execute()
    assert any("constraint violated" in w for w in result.warnings)


def test_firing_cap_aborts(monkeypatch):
    # cards spawn screens spawn cards: the sweep would never settle
    monkeypatch.setattr(ex, "FIRING_CAP", 25)
    session = Session(load_lexicon(RICH_LEX), depth_limit=40)
    session.submit("John enters a card. Every card has a screen. Every screen has a card.")
    session.accept()
    result = session.execute()
    assert result.error is not None


def test_done_event_reports_trace_length(simplemat):
    events = []
    simplemat.execute(emit=lambda k, d: events.append((k, d)))
    assert events[-1] == ("done", {"trace_lines": 4})


def test_scripted_env_returns_answers_in_order():
    env = scripted_env(["a", "b"])
    assert env("x?") == "a"
    assert env("y?") == "b"
    assert env("z?") is None


def test_execute_keeps_prior_facts_and_records_events(simplemat):
    before = simplemat.kb_dump().splitlines()
    simplemat.execute()
    after = simplemat.kb_dump().splitlines()
    assert all(line in after for line in before)
    # event facts persist so the run's outcome can be queried
    assert simplemat.query("Does SimpleMat reject the card?").answer == "Yes."
