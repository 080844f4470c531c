import pytest

from acekit import lexicon as lx
from acekit.errors import DanglingLink, DuplicateFormConflict, LexiconParseError


def test_parse_noun_record():
    e = lx.parse_record("noun(customer, customers, masc, count).")
    assert e.cls == lx.COMMON_NOUN
    assert e.canonical == "customer"
    assert e.form_for(lx.SG) == "customer"
    assert e.form_for(lx.PL) == "customers"
    assert e.gender == "masc"


def test_parse_compound_noun_record():
    e = lx.parse_record('cnoun("personal code", "personal codes", neut, count).')
    assert e.cls == lx.COMPOUND_NOUN
    assert e.canonical == "personal_code"
    assert e.form_for(lx.SG) == "personal code"


def test_parse_verb_and_adj_records():
    t = lx.parse_record("tverb(enter, enters).")
    assert t.cls == lx.TRANSITIVE_VERB and t.canonical == "enter"
    assert t.form_for(lx.SG) == "enters" and t.form_for(lx.PL) == "enter"
    i = lx.parse_record("iverb(sleep, sleeps).")
    assert i.cls == lx.INTRANSITIVE_VERB
    a = lx.parse_record("adj(valid).")
    assert a.cls == lx.ADJECTIVE and a.form_for(lx.NA) == "valid"


def test_parse_pname_keeps_display():
    e = lx.parse_record('pname(simplemat, "SimpleMat", neut).')
    assert e.cls == lx.PROPER_NAME
    assert e.canonical == "simplemat"
    assert e.display == "SimpleMat"


def test_parse_link_records_are_markers():
    e = lx.parse_record("abbrev(sm, simplemat).")
    assert e.cls == lx.LINK_CLASS
    s = lx.parse_record("syn(screen, card).")
    assert s.cls == lx.LINK_CLASS


@pytest.mark.parametrize("line", [
    "noun(customer).",
    "noun(customer, customers, plaid, count).",
    "verb(enter, enters).",
    "not a record at all",
])
def test_bad_records_raise_with_line_number(line):
    with pytest.raises(LexiconParseError):
        lx.parse_record(line, line_no=7)
    try:
        lx.parse_record(line, line_no=7)
    except LexiconParseError as err:
        assert "7" in err.display()


def test_load_resolves_comments_and_blank_lines():
    lex = lx.load("% comment\n\nnoun(card, cards, neut, count).  % trailing\n")
    assert lex.lookup("cards")[0][1] == lx.PL


def test_lookup_is_case_insensitive():
    lex = lx.load("noun(card, cards, neut, count).\n")
    assert lex.lookup("Card") and lex.lookup("CARD")


def test_compound_lookup_single_spaced():
    lex = lx.load('cnoun("personal  code", "personal codes", neut, count).\n')
    assert lex.lookup("personal code")
    assert lex.max_compound_words == 2


def test_duplicate_form_conflict():
    # "cards" already maps to the card entry; a different canonical may not claim it
    lex = lx.load("noun(card, cards, neut, count).\n")
    with pytest.raises(DuplicateFormConflict):
        lex.add_entry(lx.noun_entry("badge", "cards", "neut"))


def test_same_canonical_entry_is_replaced_not_duplicated():
    lex = lx.load("adj(valid).\n")
    lex = lex.add_entry(lx.adj_entry("valid"))
    assert len(lex.find_canonical("valid")) == 1


def test_abbrev_creates_stub_and_representative_follows_link():
    lex = lx.load('pname(simplemat, "SimpleMat", neut).\nabbrev(sm, simplemat).\n')
    entry, _num = lex.lookup("sm")[0]
    assert entry.link == ("abbreviation", "simplemat")
    rep = lex.representative(entry)
    assert rep.canonical == "simplemat"
    assert rep.display == "SimpleMat"


def test_dangling_link_rejected():
    lex = lx.load("noun(card, cards, neut, count).\n")
    with pytest.raises(DanglingLink):
        lx.apply_link(lex, "abbreviation", "sm", "simplemat")


def test_bare_link_to_common_noun_rejected():
    # only proper names may be introduced by a bare syn/abbrev record
    lex = lx.load("noun(card, cards, neut, count).\n")
    with pytest.raises(DanglingLink):
        lx.apply_link(lex, "synonym", "badge", "card")


def test_syn_between_nouns_links_existing_entries():
    lex = lx.load("noun(card, cards, neut, count).\n"
                  "noun(badge, badges, neut, count).\n"
                  "syn(badge, card).\n")
    entry, _num = lex.lookup("badge")[0]
    assert lex.representative(entry).canonical == "card"


def test_record_line_round_trip():
    for line in ("noun(customer, customers, masc, count).",
                 'cnoun("personal code", "personal codes", neut, count).',
                 "tverb(enter, enters).",
                 "iverb(sleep, sleeps).",
                 "adj(valid).",
                 'pname(simplemat, "SimpleMat", neut).'):
        assert lx.record_line(lx.parse_record(line)) == line


def test_save_load_round_trip(tmp_path):
    text = ("noun(customer, customers, masc, count).\n"
            'pname(simplemat, "SimpleMat", neut).\n'
            "abbrev(sm, simplemat).\n")
    lex = lx.load(text)
    saved = lx.save(lex)
    assert lx.load(saved) == lex
    assert lx.save(lx.load(saved)) == saved
    p = tmp_path / "words.lex"
    lx.save_file(lex, p)
    assert lx.load_file(p) == lex


def test_spell_check_reports_unknown_words():
    lex = lx.load("noun(customer, customers, masc, count).\n")
    assert lx.spell_check(lex, "The custmer sleeps.") == ["custmer", "sleeps"]
    assert lx.spell_check(lex, "A customer.") == []


def test_canonical_symbol():
    assert lx.canonical_symbol("personal code") == "personal_code"
    assert lx.canonical_symbol("SimpleMat") == "simplemat"
