"""Shared fixtures: the SimpleMat lexicon and text, plus acceptance reporting.

The terminal summary prints one PASS/FAIL line per acceptance criterion,
aggregated over all tests named ``test_criterion_<n>*``.
"""

import re
from typing import Dict, List

import pytest

from acekit import Session, load_lexicon

SIMPLEMAT_LEX = """\
noun(customer, customers, masc, count).
noun(card, cards, neut, count).
cnoun("personal code", "personal codes", neut, count).
tverb(enter, enters).
tverb(check, checks).
tverb(reject, rejects).
tverb(have, has).
adj(numeric).
adj(valid).
pname(simplemat, "SimpleMat", neut).
abbrev(sm, simplemat).
"""

SIMPLEMAT_TEXT = (
    "The customer enters a card and a numeric personal code that "
    "SimpleMat checks. "
    "If the personal code is not valid then SM rejects the card."
)

# a wider word stock for generated-text suites; the extra entries do not
# occur in SIMPLEMAT_TEXT so golden outputs are unaffected
RICH_LEX = SIMPLEMAT_LEX + """\
noun(woman, women, fem, count).
noun(screen, screens, neut, count).
iverb(sleep, sleeps).
iverb(work, works).
adj(small).
pname(john, "John", masc).
pname(mary, "Mary", fem).
"""


@pytest.fixture
def lexicon():
    return load_lexicon(SIMPLEMAT_LEX)


@pytest.fixture
def rich_lexicon():
    return load_lexicon(RICH_LEX)


@pytest.fixture
def simplemat(lexicon):
    """A session with the two SimpleMat sentences accepted."""
    session = Session(lexicon)
    outcome = session.submit(SIMPLEMAT_TEXT)
    assert outcome.status == "ok", outcome.error
    session.accept()
    return session


_criteria: Dict[int, List[bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m:
        _criteria.setdefault(int(m.group(1)), []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        verdict = "PASS" if all(_criteria[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}")
