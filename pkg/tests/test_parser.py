import pytest

from acekit import lexicon as lx
from acekit.errors import AceSyntaxError, AgreementError, UnknownWordError
from acekit.parser import dump_tree, parse_sentence, parse_text, tokenize

from conftest import RICH_LEX


@pytest.fixture
def lex():
    return lx.load(RICH_LEX)


# -- tokenizer


def test_tokenize_splits_sentences_and_keeps_terminators(lex):
    sents = tokenize(lex, "A customer sleeps. Does the customer work?")
    assert len(sents) == 2
    assert sents[0][-1].surface == "."
    assert sents[1][-1].surface == "?"


def test_tokenize_joins_compounds_longest_match(lex):
    toks = tokenize(lex, "A personal code is valid.")[0]
    surfaces = [t.surface for t in toks]
    assert "personal code" in surfaces
    joined = next(t for t in toks if t.surface == "personal code")
    assert joined.kind == "compound"


def test_tokenize_unknown_word(lex):
    with pytest.raises(UnknownWordError) as exc:
        tokenize(lex, "The custmer sleeps.")
    assert "custmer" in str(exc.value)


def test_tokenize_missing_terminator(lex):
    with pytest.raises(AceSyntaxError):
        tokenize(lex, "A customer sleeps")


def test_token_positions_are_sentence_and_index(lex):
    sents = tokenize(lex, "A customer sleeps. A card is valid.")
    assert sents[1][0].sentence == 1
    assert sents[1][0].index == 0


# -- accepted sentence shapes; parse_text raises on any failure


@pytest.mark.parametrize("text", [
    "A customer enters a card.",
    "The customer sleeps.",
    "Every customer has a card.",
    "No customer enters a card.",
    "John works.",
    "Mary does not enter a card.",
    "A card is not valid.",
    "A customer is a woman.",
    "A customer enters a card and a personal code.",
    "A customer enters a card or a personal code.",
    "A customer sleeps and a woman works.",
    "Either a customer sleeps or a woman works.",
    "Neither a customer nor a woman works.",
    "A customer who sleeps enters a card.",
    "A card that a customer enters is valid.",
    "A card which a customer does not enter is valid.",
    "If a customer has a card then the customer sleeps.",
    "If a customer sleeps then the customer works and the customer has a card.",
    "Every customer who has a card sleeps and works.",
    "Does a customer sleep?",
    "Does the customer not sleep?",
    "Is a card valid?",
    "Who enters a card?",
    "Who does not enter a card?",
    "What does the customer enter?",
    "Which customer sleeps?",
    "Who does Mary check?",
])
def test_parses(lex, text):
    assert parse_text(lex, text)


@pytest.mark.parametrize("text,kind", [
    ("A customer enter a card.", AgreementError),
    ("Every customers sleeps.", AgreementError),
    ("A customer does not enters a card.", AgreementError),
    ("A customer enters.", AceSyntaxError),
    ("Enters a card.", AceSyntaxError),
    ("If a customer sleeps.", AceSyntaxError),
    ("A customer sleeps a card.", AceSyntaxError),
])
def test_rejections(lex, text, kind):
    with pytest.raises(kind):
        parse_text(lex, text)


def test_error_position_is_furthest_failure(lex):
    # "sleeps" is intransitive; failure is at the object NP, token index 3
    with pytest.raises(AceSyntaxError) as exc:
        parse_text(lex, "A customer sleeps a card.")
    assert exc.value.pos is not None
    assert exc.value.pos.token == 3


def test_agreement_error_position(lex):
    with pytest.raises(AgreementError) as exc:
        parse_text(lex, "A customer enter a card.")
    assert exc.value.pos is not None
    assert exc.value.pos.token == 2


# -- coordination ambiguity: a disjunct followed by a verb is a new clause,
#    not part of the object NP


def test_object_or_followed_by_verb_is_clause_coordination(lex):
    tree = parse_text(lex, "A customer enters a card or the customer enters a personal code.")[0]
    text = dump_tree(tree)
    assert text.count("clause[") >= 2


def test_object_or_without_verb_stays_in_object(lex):
    tree = parse_text(lex, "A customer enters a card or a personal code.")[0]
    text = dump_tree(tree)
    assert text.count("clause[") == 1
    assert "np-coord" in text


def test_mixed_gender_or_subject_parses(lex):
    assert parse_text(lex, "A customer or a card is valid.")


def test_and_subject_takes_plural_verb(lex):
    assert parse_text(lex, "A customer and a woman work.")
    with pytest.raises(AgreementError):
        parse_text(lex, "A customer and a woman works.")


# -- golden tree for the first specification sentence


GOLDEN_TREE = """\
sentence[0-11]
  clause[0-11] {agr:third-sg gender:masc}
    np[0-1] {agr:third-sg gender:masc}
      det[0] The
      noun[1] customer <customer>
    vp[2-11] {agr:third-sg gender:masc}
      tverb[2] enters <enter>
      np-coord[3-11] {agr:third-pl}
        np[3-4] {agr:third-sg gender:neut}
          det[3] a
          noun[4] card <card>
        np[6-11] {agr:third-sg gender:neut}
          det[6] a
          adj[7] numeric <numeric>
          noun[8] personal code <personal_code>
          rel-obj[9-11]
            relpro[9] that
            np[10-10] {agr:third-sg gender:neut}
              name[10] SimpleMat <simplemat>
            tverb[11] checks <check>
"""


def test_golden_tree_dump(lex):
    tree = parse_text(
        lex,
        "The customer enters a card and a numeric personal code that SimpleMat checks.",
    )[0]
    assert dump_tree(tree) == GOLDEN_TREE.rstrip("\n")


def test_abbreviation_parses_as_name(lex):
    tree = parse_text(lex, "SM rejects the card.")[0]
    assert "name[0] SM <sm>" in dump_tree(tree)
