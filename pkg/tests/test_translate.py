"""DRS-to-clause translation: Skolemization, rules, constraints, queries."""

import pytest

from acekit import lexicon as lx
from acekit.discourse import DiscourseState, build_sentence, cleanup, resolve
from acekit.drs import QueryC
from acekit.errors import UntranslatableNesting
from acekit.logic import KnowledgeBase, Literal, NamedConst, resolve_term, solve
from acekit.parser import parse_sentence, tokenize
from acekit.translate import (ReferentIndex, Skolemizer, generate_answer,
                              translate, translate_query, verb_predicates)

from conftest import RICH_LEX, SIMPLEMAT_LEX, SIMPLEMAT_TEXT


def build(lexicon, text):
    state = DiscourseState()
    for i, tokens in enumerate(tokenize(lexicon, text)):
        tree = parse_sentence(lexicon, tokens, i)
        build_sentence(state, tree, lexicon)
        resolve(state, lexicon)
    return state


def to_kb(lexicon, text, sk=None):
    state = build(lexicon, text)
    result = translate(cleanup(state.top), sk or Skolemizer())
    kb = KnowledgeBase()
    for clause in result.clauses:
        kb.assert_clause(clause)
    return kb, result


@pytest.fixture
def lex():
    return lx.load(SIMPLEMAT_LEX)


@pytest.fixture
def rich():
    return lx.load(RICH_LEX)


GOLDEN_KB = """\
fact(customer(0)).
fact(card(1)).
fact(enter(0, 1)).
fact(numeric(2)).
fact(personal_code(2)).
fact(named(3, simplemat)).
fact(check(3, 2)).
fact(enter(0, 2)).
fact((reject(3, 1):-neg(valid(2))))."""


def test_golden_kb(lex):
    kb, result = to_kb(lex, SIMPLEMAT_TEXT)
    assert kb.dump() == GOLDEN_KB
    assert not result.warnings


def test_skolem_constants_follow_introduction_order(lex):
    state = build(lex, SIMPLEMAT_TEXT)
    cleaned = cleanup(state.top)
    sk = Skolemizer()
    translate(cleaned, sk)
    consts = [sk.const_for(r).n for r in cleaned.referents]
    assert consts == [0, 1, 2, 3]
    # translating again reuses the same mapping
    translate(cleaned, sk)
    assert [sk.const_for(r).n for r in cleaned.referents] == [0, 1, 2, 3]


def test_from_sentence_suppresses_old_clauses(lex):
    state = build(lex, SIMPLEMAT_TEXT)
    cleaned = cleanup(state.top)
    sk = Skolemizer()
    first = translate(cleaned, sk, from_sentence=0)
    again = translate(cleaned, sk, from_sentence=2)
    assert len(first.clauses) == 9
    assert again.clauses == []


def test_rule_consequence_referents_become_skolem_functions(rich):
    kb, _ = to_kb(rich, "Every customer has a card.")
    assert kb.dump() == ("fact((card(sk1(A)):-customer(A))).\n"
                        "fact((have(A, sk1(A)):-customer(A))).")


def test_skolem_function_numbering_is_stable_across_translations(rich):
    # the second translation walks the first rule again, so the new rule's
    # function is sk2 even though only it produces clauses
    state = DiscourseState()
    sk = Skolemizer()
    for i, sentence in enumerate(["Every customer has a card.",
                                  "Every woman has a screen."]):
        tokens = tokenize(rich, sentence)[0]
        tree = parse_sentence(rich, tokens, i)
        build_sentence(state, tree, rich)
        resolve(state, rich)
        result = translate(cleanup(state.top), sk, from_sentence=i)
    assert [str(c) for c in result.clauses] == [
        "screen(sk2(A)):-woman(A)",
        "have(A, sk2(A)):-woman(A)",
    ]


def test_or_in_consequence_is_strengthened_with_warning(rich):
    kb, result = to_kb(rich, "Every customer enters a card or a personal code.")
    assert kb.dump() == (
        "fact((card(sk1(A)):-customer(A))).\n"
        "fact((enter(A, sk1(A)):-customer(A))).\n"
        "fact((personal_code(sk2(A)):-customer(A))).\n"
        "fact((enter(A, sk2(A)):-customer(A)))."
    )
    assert any("strengthened" in w for w in result.warnings)


def test_negation_in_antecedent_becomes_neg_literal(lex):
    kb, _ = to_kb(lex, SIMPLEMAT_TEXT)
    rule = kb.clauses[-1]
    assert not rule.body[0].positive


def test_top_level_negation_becomes_constraint(rich):
    kb, result = to_kb(rich, "No customer enters a card.")
    assert kb.dump() == "fact((false:-customer(A), card(B), enter(A, B)))."
    assert any("constraint" in w for w in result.warnings)


def test_top_level_disjunction_is_untranslatable(rich):
    state = build(rich, "A customer sleeps or a woman works.")
    with pytest.raises(UntranslatableNesting):
        translate(cleanup(state.top), Skolemizer())


def test_yes_no_query_goals(lex):
    state = build(lex, SIMPLEMAT_TEXT)
    tokens = tokenize(lex, "Does SimpleMat check the personal code?")[0]
    tree = parse_sentence(lex, tokens, 2)
    build_sentence(state, tree, lex)
    resolve(state, lex, strict_definites=True)
    cleaned = cleanup(state.top)
    query = next(c for c in reversed(cleaned.conditions) if isinstance(c, QueryC))
    sk = Skolemizer()
    translate(cleaned, sk)
    goal = translate_query(query, sk)
    assert goal.wh_var is None
    assert [str(g) for g in goal.goals] == ["check(3, 2)"]


def test_wh_query_goal_has_open_variable(lex):
    state = build(lex, SIMPLEMAT_TEXT)
    tokens = tokenize(lex, "Who enters a card?")[0]
    tree = parse_sentence(lex, tokens, 2)
    build_sentence(state, tree, lex)
    resolve(state, lex, strict_definites=True)
    cleaned = cleanup(state.top)
    query = next(c for c in reversed(cleaned.conditions) if isinstance(c, QueryC))
    sk = Skolemizer()
    translate(cleaned, sk)
    goal = translate_query(query, sk)
    assert goal.wh_var is not None
    preds = sorted(g.pred for g in goal.goals)
    assert preds == ["card", "enter"]


# independent semantic oracle: the universal rule holds in a two-element model


def test_universal_rule_entailment_two_element_model(rich):
    kb, _ = to_kb(rich, "Every customer has a card.")
    kb.assert_clause(
        __import__("acekit.logic", fromlist=["Clause"]).Clause(
            Literal("customer", (NamedConst("john"),))))
    kb.assert_clause(
        __import__("acekit.logic", fromlist=["Clause"]).Clause(
            Literal("customer", (NamedConst("mary"),))))
    from acekit.logic import Var
    W = Var("W")
    owners = {str(resolve_term(W, s))
              for s in solve(kb, [Literal("have", (W, Var("C")))])}
    assert owners == {"john", "mary"}
    # each customer's card exists and the two cards are distinct terms
    cards = {str(resolve_term(Var("C"), s))
             for s in solve(kb, [Literal("card", (Var("C"),))])}
    assert cards == {"sk1(john)", "sk1(mary)"}


# -- answers


def test_generate_answer_yes_no(lex):
    kb, _ = to_kb(lex, SIMPLEMAT_TEXT)

    class G:
        wh_var = None
        wh_word = None
        goals = ()

    index = ReferentIndex.from_kb(kb, lex)
    assert generate_answer(G, solve(kb, [Literal("check", (NamedConst("x"),), )]), index) == "No."


def test_referent_index_describes_constants(lex):
    kb, _ = to_kb(lex, SIMPLEMAT_TEXT)
    index = ReferentIndex.from_kb(kb, lex)
    from acekit.logic import SkolemConst
    assert index.describe(SkolemConst(0)) == "the customer"
    assert index.describe(SkolemConst(3)) == "SimpleMat"
    assert index.describe(NamedConst("john")) == "John" or \
        index.describe(NamedConst("john")) == "john"
    assert index.describe(SkolemConst(99)) == "an unknown object"


def test_verb_predicates_excludes_nouns(lex):
    preds = verb_predicates(lex)
    assert "enter" in preds and "check" in preds
    assert "customer" not in preds and "valid" not in preds
