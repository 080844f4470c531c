"""Tokenizer and grammar for the controlled English subset.

The grammar (documented production by production in docs/grammar.md) covers
declarative sentences ``subject + finite verb (+ complement or object)``,
composites built with and/or/either-or/neither-nor, if-then, relative
clauses, verb and copula negation, no-NPs and every-NPs, plus yes/no and wh
questions.  Verbs occur only in the active voice simple present, third person
singular or plural.

Parsing is recursive descent with full backtracking inside a sentence and a
furthest-failure record, so a failed parse reports the position of the
longest successful prefix.  Agreement is enforced with feature structures;
an otherwise well-formed parse whose deepest failure was a unification
failure reports agreement-error instead of syntax-error.

Ambiguity defaults are fixed by rule order: relative clauses attach to the
nearest preceding NP conjunct, NP coordination is tried before VP and
sentence coordination, ``and`` binds tighter than ``or``, and if-then scopes
over the whole consequent.
"""

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from . import lexicon as lx
from .errors import AceSyntaxError, AgreementError, SourcePos, UnknownWordError
from .features import FeatureStructure, unify

SG, PL = lx.SG, lx.PL


@dataclass
class Token:
    surface: str
    kind: str       # "word" | "compound" | "punct"
    sentence: int
    index: int

    @property
    def pos(self) -> SourcePos:
        return SourcePos(self.sentence, self.index)


def _scan(text: str) -> List[Tuple[str, str]]:
    pieces = []
    for m in re.finditer(r"[A-Za-z]+|[.?]|\S", text):
        s = m.group(0)
        if re.fullmatch(r"[A-Za-z]+", s):
            pieces.append((s, "word"))
        elif s in ".?":
            pieces.append((s, "punct"))
        else:
            raise AceSyntaxError(f"unexpected character {s!r}")
    return pieces


def tokenize(lexicon: lx.Lexicon, text: str, require_known: bool = True) -> List[List[Token]]:
    """Split into sentences on ``.``/``?`` (terminator kept as a token) and
    join compound nouns by longest match.  With ``require_known`` the full
    spell_check result is raised as unknown-word before any parsing."""
    if require_known:
        unknown = lx.spell_check(lexicon, text)
        if unknown:
            raise UnknownWordError(unknown)
    sentences: List[List[Token]] = []
    current: List[str] = []

    def flush_words(sent_idx: int, tokens: List[Token]) -> None:
        for word in lx.join_compounds(lexicon, current):
            kind = "compound" if " " in word else "word"
            tokens.append(Token(word, kind, sent_idx, len(tokens)))
        current.clear()

    tokens: List[Token] = []
    for surface, kind in _scan(text):
        if kind == "word":
            current.append(surface)
        else:
            flush_words(len(sentences), tokens)
            tokens.append(Token(surface, "punct", len(sentences), len(tokens)))
            sentences.append(tokens)
            tokens = []
    if current:
        flush_words(len(sentences), tokens)
    if tokens:
        last = tokens[-1]
        raise AceSyntaxError("missing sentence terminator", last.pos)
    return sentences


# ---------------------------------------------------------------------------
# syntax tree


@dataclass
class Leaf:
    token: Token
    role: str                      # noun/tverb/iverb/adj/name/det/pron/aux/neg/relpro/conj/wh/punct
    entry: Optional[lx.LexEntry] = None
    number: Optional[str] = None

    @property
    def surface(self) -> str:
        return self.token.surface

    @property
    def canonical(self) -> Optional[str]:
        return self.entry.canonical if self.entry else None


class SyntaxNode:
    label = "node"

    def children(self) -> list:
        return []

    def leaves(self) -> List[Leaf]:
        out = []
        for child in self.children():
            if isinstance(child, Leaf):
                out.append(child)
            elif isinstance(child, SyntaxNode):
                out.extend(child.leaves())
        return out

    def span(self) -> Tuple[int, int]:
        idx = [leaf.token.index for leaf in self.leaves()]
        return (min(idx), max(idx)) if idx else (0, 0)

    feats: Optional[FeatureStructure] = None


@dataclass
class NP(SyntaxNode):
    label = "np"
    det: Optional[Leaf] = None          # a/an/the/every/no
    adjectives: List[Leaf] = field(default_factory=list)
    noun: Optional[Leaf] = None
    rel: Optional[SyntaxNode] = None
    pname: Optional[Leaf] = None
    pronoun: Optional[Leaf] = None
    wh: Optional[Leaf] = None           # who/what as NP, or which (with noun)
    feats: Optional[FeatureStructure] = None
    # filled in by the discourse builder
    referent_id: Optional[int] = None
    resolution = None

    @property
    def kind(self) -> str:
        if self.wh is not None:
            return "wh"
        if self.pname is not None:
            return "name"
        if self.pronoun is not None:
            return "pron"
        det = self.det.surface.lower() if self.det else ""
        if det in ("a", "an"):
            return "indef"
        if det == "the":
            return "def"
        return det  # "every" | "no"

    def children(self):
        out = [l for l in (self.det, self.wh, self.pname, self.pronoun) if l]
        out.extend(self.adjectives)
        if self.noun:
            out.append(self.noun)
        if self.rel:
            out.append(self.rel)
        return out


@dataclass
class NPCoord(SyntaxNode):
    label = "np-coord"
    op: str = "and"
    parts: List[NP] = field(default_factory=list)
    marker: Optional[str] = None        # "either" | "neither"
    feats: Optional[FeatureStructure] = None

    def children(self):
        return list(self.parts)


@dataclass
class VP(SyntaxNode):
    label = "vp"
    kind: str = "verb"                  # verb | cop-adj | cop-np
    verb: Optional[Leaf] = None
    obj: Optional[SyntaxNode] = None    # NP or NPCoord
    comp_adj: Optional[Leaf] = None
    comp_np: Optional[NP] = None
    negated: bool = False
    aux: Optional[Leaf] = None
    feats: Optional[FeatureStructure] = None

    def children(self):
        out = [l for l in (self.aux, self.verb, self.comp_adj) if l]
        if self.obj is not None:
            out.append(self.obj)
        if self.comp_np is not None:
            out.append(self.comp_np)
        return out


@dataclass
class VPCoord(SyntaxNode):
    label = "vp-coord"
    op: str = "and"
    parts: List[VP] = field(default_factory=list)

    def children(self):
        return list(self.parts)


@dataclass
class RelSubj(SyntaxNode):
    """Subject-gap relative clause: 'who enters a card'."""
    label = "rel-subj"
    relpro: Optional[Leaf] = None
    vp: Optional[SyntaxNode] = None

    def children(self):
        out = [self.relpro] if self.relpro else []
        if self.vp:
            out.append(self.vp)
        return out


@dataclass
class RelObj(SyntaxNode):
    """Object-gap relative clause: 'that SimpleMat checks'."""
    label = "rel-obj"
    relpro: Optional[Leaf] = None
    subject: Optional[SyntaxNode] = None
    verb: Optional[Leaf] = None
    negated: bool = False

    def children(self):
        out = [self.relpro] if self.relpro else []
        if self.subject:
            out.append(self.subject)
        if self.verb:
            out.append(self.verb)
        return out


@dataclass
class Clause(SyntaxNode):
    label = "clause"
    subject: Optional[SyntaxNode] = None  # NP or NPCoord
    predicate: Optional[SyntaxNode] = None  # VP or VPCoord
    feats: Optional[FeatureStructure] = None

    def children(self):
        return [c for c in (self.subject, self.predicate) if c]


@dataclass
class Coord(SyntaxNode):
    """Sentence-level coordination; 'neither' renders as negated or."""
    label = "coord"
    op: str = "and"
    parts: List[SyntaxNode] = field(default_factory=list)
    marker: Optional[str] = None

    def children(self):
        return list(self.parts)


@dataclass
class IfThen(SyntaxNode):
    label = "ifthen"
    antecedent: Optional[SyntaxNode] = None
    consequent: Optional[SyntaxNode] = None

    def children(self):
        return [c for c in (self.antecedent, self.consequent) if c]


@dataclass
class YesNoQ(SyntaxNode):
    label = "q-yesno"
    subject: Optional[SyntaxNode] = None
    predicate: Optional[VP] = None

    def children(self):
        return [c for c in (self.subject, self.predicate) if c]


@dataclass
class WhQ(SyntaxNode):
    label = "q-wh"
    wh_np: Optional[NP] = None          # carries wh leaf and optional which-noun
    role: str = "subj"                  # wh constituent is subject or object
    predicate: Optional[SyntaxNode] = None  # role=subj: VP/VPCoord
    subject: Optional[SyntaxNode] = None    # role=obj: inner subject NP
    verb: Optional[Leaf] = None             # role=obj: transitive verb
    negated: bool = False

    def children(self):
        out = [self.wh_np] if self.wh_np else []
        for c in (self.subject, self.verb, self.predicate):
            if c:
                out.append(c)
        return out


@dataclass
class Sentence(SyntaxNode):
    label = "sentence"
    body: Optional[SyntaxNode] = None
    terminator: Optional[Token] = None
    index: int = 0

    def children(self):
        return [self.body] if self.body else []

    @property
    def is_question(self) -> bool:
        return isinstance(self.body, (YesNoQ, WhQ))


def dump_tree(node, depth: int = 0) -> str:
    """One node per line: ``label[start-end] {features}``."""
    lines = []

    def walk(n, d):
        pad = "  " * d
        if isinstance(n, Leaf):
            extra = f" <{n.canonical}>" if n.entry else ""
            lines.append(f"{pad}{n.role}[{n.token.index}] {n.surface}{extra}")
            return
        start, end = n.span()
        feats = getattr(n, "feats", None)
        shown = f" {feats.display()}" if feats is not None else ""
        lines.append(f"{pad}{n.label}[{start}-{end}]{shown}")
        for child in n.children():
            walk(child, d + 1)

    walk(node, depth)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# recursive descent parser

_PRONOUN_FEATS = {
    "he": ("masc", "third-sg"),
    "she": ("fem", "third-sg"),
    "it": ("neut", "third-sg"),
    "they": (None, "third-pl"),
}

# relative pronoun gender constraints: who needs an animate-compatible gender,
# which needs neuter, that is free
_RELPRO_GENDER = {"who": "common", "which": "neut", "that": None}


def _agr(number: Optional[str]) -> Optional[str]:
    if number == SG:
        return "third-sg"
    if number == PL:
        return "third-pl"
    return None


class _Fail(Exception):
    pass


class _SentenceParser:
    def __init__(self, lexicon: lx.Lexicon, tokens: List[Token]):
        self.lexicon = lexicon
        self.tokens = tokens
        self.pos = 0
        self.furthest = -1
        self.furthest_expected = "sentence"
        self.furthest_agreement = False

    # -- machinery

    def fail(self, expected: str, agreement: bool = False):
        if self.pos > self.furthest or (self.pos == self.furthest and agreement):
            self.furthest = self.pos
            self.furthest_expected = expected
            self.furthest_agreement = agreement
        raise _Fail()

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next_word(self) -> Optional[str]:
        t = self.peek()
        return t.surface.lower() if t is not None and t.kind != "punct" else None

    def take(self) -> Token:
        t = self.peek()
        if t is None:
            self.fail("more input")
        self.pos += 1
        return t

    def expect_word(self, *words: str) -> Token:
        t = self.peek()
        if t is None or t.kind == "punct" or t.surface.lower() not in words:
            self.fail("'" + "' or '".join(words) + "'")
        return self.take()

    def at_word(self, *words: str) -> bool:
        w = self.next_word()
        return w is not None and w in words

    def attempt(self, fn, *args):
        saved = self.pos
        try:
            return fn(*args)
        except _Fail:
            self.pos = saved
            return None

    # -- entry point

    def parse(self, sentence_index: int) -> Sentence:
        body = self.attempt(self.question)
        expected_term = "?"
        if body is None:
            body = self.composite()
            expected_term = "."
        t = self.peek()
        if t is None or t.kind != "punct":
            self.fail(f"'{expected_term}'")
        if t.surface != expected_term:
            self.fail(f"'{expected_term}'")
        term = self.take()
        if self.pos != len(self.tokens):
            self.fail("end of sentence")
        return Sentence(body=body, terminator=term, index=sentence_index)

    # -- declaratives

    def composite(self) -> SyntaxNode:
        if self.at_word("if"):
            return self.ifthen()
        return self.disjunction()

    def ifthen(self) -> IfThen:
        self.expect_word("if")
        ant = self.disjunction()
        self.expect_word("then")
        cons = self.composite()  # if-then scopes over the whole consequent
        return IfThen(antecedent=ant, consequent=cons)

    def disjunction(self) -> SyntaxNode:
        first = self.conjunction()
        parts = [first]
        while self.at_word("or"):
            saved = self.pos
            self.take()
            nxt = self.attempt(self.conjunction)
            if nxt is None:
                self.pos = saved
                break
            parts.append(nxt)
        if len(parts) == 1:
            return first
        return Coord(op="or", parts=parts)

    def conjunction(self) -> SyntaxNode:
        first = self.unit()
        parts = [first]
        while self.at_word("and"):
            saved = self.pos
            self.take()
            nxt = self.attempt(self.unit)
            if nxt is None:
                self.pos = saved
                break
            parts.append(nxt)
        if len(parts) == 1:
            return first
        return Coord(op="and", parts=parts)

    def unit(self) -> SyntaxNode:
        if self.at_word("either"):
            saved = self.pos
            node = self.attempt(self._either_sentences)
            if node is not None:
                return node
            self.pos = saved
        if self.at_word("neither"):
            saved = self.pos
            node = self.attempt(self._neither_sentences)
            if node is not None:
                return node
            self.pos = saved
        return self.clause()

    def _either_sentences(self) -> Coord:
        self.expect_word("either")
        a = self.clause()
        self.expect_word("or")
        b = self.clause()
        return Coord(op="or", parts=[a, b], marker="either")

    def _neither_sentences(self) -> Coord:
        self.expect_word("neither")
        a = self.clause()
        self.expect_word("nor")
        b = self.clause()
        return Coord(op="or", parts=[a, b], marker="neither")

    def clause(self) -> Clause:
        subject = self.np(case="nom")
        subj_feats = subject.feats
        predicate = self.vp(subj_feats)
        pred_feats = getattr(predicate, "feats", None)
        feats = unify(subj_feats, pred_feats) if pred_feats is not None else subj_feats
        return Clause(subject=subject, predicate=predicate, feats=feats)

    # -- noun phrases

    def np(self, case: str, allow_coord: bool = True) -> SyntaxNode:
        if allow_coord and self.at_word("either"):
            saved = self.pos
            grp = self.attempt(self._np_group, "either", "or", case)
            if grp is not None:
                return grp
            self.pos = saved
        if allow_coord and self.at_word("neither"):
            saved = self.pos
            grp = self.attempt(self._np_group, "neither", "nor", case)
            if grp is not None:
                return grp
            self.pos = saved
        first = self.np_core(case)
        if not allow_coord:
            return first
        parts = [first]
        op = None
        while True:
            w = self.next_word()
            if w not in ("and", "or") or (op is not None and w != op):
                break
            saved = self.pos
            self.take()
            nxt = self.attempt(self.np_core, case)
            if nxt is None or nxt.kind in ("every", "no"):
                self.pos = saved
                break
            if case == "acc" and self._continues_as_clause():
                # the disjunct is really the subject of a coordinated clause
                self.pos = saved
                break
            op = w
            parts.append(nxt)
        if len(parts) == 1:
            return first
        if any(p.kind in ("every", "no") for p in parts):
            self.fail("coordinable noun phrase")
        feats = self._coord_feats(op, parts)
        return NPCoord(op=op, parts=parts, feats=feats)

    def _np_group(self, opener: str, joiner: str, case: str) -> NPCoord:
        self.expect_word(opener)
        a = self.np_core(case)
        self.expect_word(joiner)
        b = self.np_core(case)
        if a.kind in ("every", "no") or b.kind in ("every", "no"):
            self.fail("coordinable noun phrase")
        marker = opener
        feats = self._coord_feats("or", [a, b])
        return NPCoord(op="or", parts=[a, b], marker=marker, feats=feats)

    def _continues_as_clause(self) -> bool:
        """True when the next token starts a verb phrase, meaning the phrase
        just parsed was the subject of a coordinated clause, not one more
        object conjunct."""
        t = self.peek()
        if t is None or t.kind == "punct":
            return False
        w = t.surface.lower()
        if w in lx.AUXILIARIES:
            return True
        return any(e.cls in (lx.TRANSITIVE_VERB, lx.INTRANSITIVE_VERB)
                   for e, _num in self.lexicon.lookup(t.surface))

    def _coord_feats(self, op: str, parts: List[NP]) -> FeatureStructure:
        # disjuncts agree in number for the shared verb; gender is free
        if op == "and":
            return FeatureStructure(agr="third-pl")
        agr = None
        for p in parts:
            part_agr = p.feats.get("agr") if p.feats is not None else None
            if part_agr is None:
                continue
            if agr is None:
                agr = part_agr
            elif agr != part_agr:
                self.fail("agreeing noun phrases", agreement=True)
        return FeatureStructure(agr=agr) if agr else FeatureStructure()

    def np_core(self, case: str) -> NP:
        t = self.peek()
        if t is None or t.kind == "punct":
            self.fail("noun phrase")
        w = t.surface.lower()

        if w in _PRONOUN_FEATS:
            gender, agr = _PRONOUN_FEATS[w]
            # he/she/they are nominative only; it doubles as accusative
            pron_case = None if w == "it" else "nom"
            if pron_case is not None and case != pron_case:
                self.fail("noun phrase", agreement=True)
            leaf = Leaf(self.take(), "pron", number=SG if agr == "third-sg" else PL)
            feats = FeatureStructure(agr=agr, gender=gender)
            return NP(pronoun=leaf, feats=feats)

        if w in lx.DETERMINERS:
            det = Leaf(self.take(), "det")
            np = self._nbar(det=det)
            if w in ("a", "an", "every"):
                if np.feats.get("agr") == "third-pl":
                    self.fail("singular noun", agreement=True)
            return np

        # proper name
        readings = self.lexicon.lookup(t.surface)
        for entry, _num in readings:
            if entry.cls == lx.PROPER_NAME:
                leaf = Leaf(self.take(), "name", entry=entry, number=SG)
                feats = FeatureStructure(agr="third-sg", gender=entry.gender)
                return NP(pname=leaf, feats=feats)
        self.fail("noun phrase")

    def _nbar(self, det: Optional[Leaf], wh: Optional[Leaf] = None) -> NP:
        adjectives = []
        while True:
            t = self.peek()
            if t is None or t.kind == "punct":
                break
            readings = [e for e, _n in self.lexicon.lookup(t.surface)
                        if e.cls == lx.ADJECTIVE]
            if not readings:
                break
            if self._noun_leaf(t) is not None:
                # adjective/noun ambiguity: stay a noun unless the phrase
                # clearly continues
                nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
                if nxt is None or nxt.kind == "punct" or not (
                        self._is_noun(nxt) or self._is_adjective(nxt)):
                    break
            adjectives.append(Leaf(self.take(), "adj", entry=readings[0], number=lx.NA))
        t = self.peek()
        if t is None or t.kind == "punct":
            self.fail("noun")
        noun_leaf = self._noun_leaf(t)
        if noun_leaf is None:
            self.fail("noun")
        self.take()
        feats = FeatureStructure(agr=_agr(noun_leaf.number),
                                 gender=noun_leaf.entry.gender)
        np = NP(det=det, wh=wh, adjectives=adjectives, noun=noun_leaf, feats=feats)
        rel = self.attempt(self.rel_clause, np)
        if rel is not None:
            np.rel = rel
        return np

    def _is_noun(self, token: Token) -> bool:
        return any(e.cls in (lx.COMMON_NOUN, lx.COMPOUND_NOUN)
                   for e, _n in self.lexicon.lookup(token.surface))

    def _is_adjective(self, token: Token) -> bool:
        return any(e.cls == lx.ADJECTIVE for e, _n in self.lexicon.lookup(token.surface))

    def _noun_leaf(self, token: Token) -> Optional[Leaf]:
        for entry, num in self.lexicon.lookup(token.surface):
            if entry.cls in (lx.COMMON_NOUN, lx.COMPOUND_NOUN):
                return Leaf(token, "noun", entry=entry, number=num)
        return None

    # -- relative clauses

    def rel_clause(self, head: NP) -> SyntaxNode:
        t = self.peek()
        if t is None or t.kind == "punct" or t.surface.lower() not in _RELPRO_GENDER:
            self.fail("relative pronoun")
        word = t.surface.lower()
        constraint = _RELPRO_GENDER[word]
        if constraint is not None:
            if unify(head.feats, FeatureStructure(gender=constraint)) is None:
                self.fail(f"relative pronoun agreeing with {head.noun.surface!r}",
                          agreement=True)
        relpro = Leaf(self.take(), "relpro")
        obj_gap = self.attempt(self._rel_object_gap, relpro)
        if obj_gap is not None:
            return obj_gap
        vp = self.vp(head.feats)
        return RelSubj(relpro=relpro, vp=vp)

    def _rel_object_gap(self, relpro: Leaf) -> RelObj:
        subject = self.np(case="nom")
        negated = False
        t = self.peek()
        if t is not None and t.kind != "punct" and t.surface.lower() in ("does", "do"):
            aux = self.take()
            self._check_aux_agr(aux, subject.feats)
            self.expect_word("not")
            negated = True
            verb = self._verb_leaf(require=lx.TRANSITIVE_VERB, number=PL)
        else:
            verb = self._verb_leaf(require=lx.TRANSITIVE_VERB, agree_with=subject.feats)
        # the gap: no object may follow
        nxt = self.peek()
        if nxt is not None and nxt.kind != "punct" and self.attempt(self.np, "acc") is not None:
            self.fail("object gap")
        return RelObj(relpro=relpro, subject=subject, verb=verb, negated=negated)

    # -- verb phrases

    def vp(self, subj_feats: Optional[FeatureStructure]) -> SyntaxNode:
        first = self.vp_atom(subj_feats)
        parts = [first]
        op = None
        while True:
            w = self.next_word()
            if w not in ("and", "or") or (op is not None and w != op):
                break
            saved = self.pos
            self.take()
            nxt = self.attempt(self.vp_atom, subj_feats)
            if nxt is None:
                self.pos = saved
                break
            op = w
            parts.append(nxt)
        if len(parts) == 1:
            return first
        return VPCoord(op=op, parts=parts)

    def _check_aux_agr(self, aux: Token, subj_feats: Optional[FeatureStructure]):
        agr = "third-sg" if aux.surface.lower() in ("does", "is") else "third-pl"
        if unify(subj_feats, FeatureStructure(agr=agr)) is None:
            self.pos -= 1
            self.fail("auxiliary agreeing with subject", agreement=True)

    def vp_atom(self, subj_feats: Optional[FeatureStructure]) -> VP:
        t = self.peek()
        if t is None or t.kind == "punct":
            self.fail("verb phrase")
        w = t.surface.lower()

        if w in ("does", "do"):
            aux_token = self.take()
            self._check_aux_agr(aux_token, subj_feats)
            aux = Leaf(aux_token, "aux")
            self.expect_word("not")
            verb = self._verb_leaf(number=PL)
            obj = None
            if verb.entry.cls == lx.TRANSITIVE_VERB:
                obj = self.np(case="acc")
            return VP(kind="verb", verb=verb, obj=obj, negated=True, aux=aux,
                      feats=subj_feats)

        if w in ("is", "are"):
            aux_token = self.take()
            self._check_aux_agr(aux_token, subj_feats)
            aux = Leaf(aux_token, "aux")
            negated = False
            if self.at_word("not"):
                self.take()
                negated = True
            return self._copula_complement(aux, negated, subj_feats)

        verb = self._verb_leaf(agree_with=subj_feats)
        obj = None
        if verb.entry.cls == lx.TRANSITIVE_VERB:
            obj = self.np(case="acc")
        return VP(kind="verb", verb=verb, obj=obj, feats=subj_feats)

    def _copula_complement(self, aux: Leaf, negated: bool,
                           subj_feats) -> VP:
        t = self.peek()
        if t is None or t.kind == "punct":
            self.fail("adjective or noun phrase")
        readings = self.lexicon.lookup(t.surface)
        adjs = [e for e, _n in readings if e.cls == lx.ADJECTIVE]
        if adjs and not (self.pos + 1 < len(self.tokens) and self._is_noun(self.tokens[self.pos + 1])):
            leaf = Leaf(self.take(), "adj", entry=adjs[0], number=lx.NA)
            return VP(kind="cop-adj", comp_adj=leaf, negated=negated, aux=aux,
                      feats=subj_feats)
        if self.at_word("a", "an"):
            det = Leaf(self.take(), "det")
            comp = self._nbar(det=det)
            return VP(kind="cop-np", comp_np=comp, negated=negated, aux=aux,
                      feats=subj_feats)
        self.fail("adjective or indefinite noun phrase")

    def _verb_leaf(self, require: Optional[str] = None, number: Optional[str] = None,
                   agree_with: Optional[FeatureStructure] = None) -> Leaf:
        t = self.peek()
        if t is None or t.kind == "punct":
            self.fail("verb")
        readings = [(e, n) for e, n in self.lexicon.lookup(t.surface)
                    if e.cls in (lx.TRANSITIVE_VERB, lx.INTRANSITIVE_VERB)]
        if require is not None:
            readings = [(e, n) for e, n in readings if e.cls == require]
        if not readings:
            self.fail("verb")
        if number is not None:
            narrowed = [(e, n) for e, n in readings if n == number]
            if not narrowed:
                self.fail("base verb form", agreement=True)
            readings = narrowed
        if agree_with is not None:
            agreeing = [(e, n) for e, n in readings
                        if unify(agree_with, FeatureStructure(agr=_agr(n))) is not None]
            if not agreeing:
                self.fail("verb agreeing with subject", agreement=True)
            readings = agreeing
        entry, num = readings[0]
        return Leaf(self.take(), "tverb" if entry.cls == lx.TRANSITIVE_VERB else "iverb",
                    entry=entry, number=num)

    # -- questions

    def question(self) -> SyntaxNode:
        w = self.next_word()
        if w in ("does", "do"):
            return self._yesno_do()
        if w in ("is", "are"):
            return self._yesno_copula()
        if w in ("who", "what", "which"):
            return self._wh_question()
        self.fail("question")

    def _yesno_do(self) -> YesNoQ:
        aux_token = self.take()
        subject = self.np(case="nom")
        self._check_aux_agr_at(aux_token, subject.feats)
        negated = False
        if self.at_word("not"):
            self.take()
            negated = True
        verb = self._verb_leaf(number=PL)
        obj = None
        if verb.entry.cls == lx.TRANSITIVE_VERB:
            obj = self.np(case="acc")
        vp = VP(kind="verb", verb=verb, obj=obj, negated=negated,
                aux=Leaf(aux_token, "aux"), feats=subject.feats)
        return YesNoQ(subject=subject, predicate=vp)

    def _yesno_copula(self) -> YesNoQ:
        aux_token = self.take()
        subject = self.np(case="nom")
        self._check_aux_agr_at(aux_token, subject.feats)
        negated = False
        if self.at_word("not"):
            self.take()
            negated = True
        vp = self._copula_complement(Leaf(aux_token, "aux"), negated, subject.feats)
        return YesNoQ(subject=subject, predicate=vp)

    def _check_aux_agr_at(self, aux: Token, subj_feats):
        agr = "third-sg" if aux.surface.lower() in ("does", "is") else "third-pl"
        if unify(subj_feats, FeatureStructure(agr=agr)) is None:
            self.fail("subject agreeing with auxiliary", agreement=True)

    def _wh_question(self) -> WhQ:
        t = self.take()
        word = t.surface.lower()
        if word == "which":
            wh_leaf = Leaf(t, "wh")
            wh_np = self._nbar(det=None, wh=wh_leaf)
        else:
            wh_leaf = Leaf(t, "wh")
            gender = "common" if word == "who" else "neut"
            wh_np = NP(wh=wh_leaf, feats=FeatureStructure(agr="third-sg", gender=gender))

        w = self.next_word()
        after_aux = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        aux_negation = (after_aux is not None and after_aux.kind != "punct"
                        and after_aux.surface.lower() == "not")
        # "does not" after the wh word means a negated subject-role predicate
        # ("Who does not sleep?"); an object NP never starts with "not".
        if w in ("does", "do") and not aux_negation:
            aux_token = self.take()
            subject = self.np(case="nom")
            self._check_aux_agr_at(aux_token, subject.feats)
            negated = False
            if self.at_word("not"):
                self.take()
                negated = True
            verb = self._verb_leaf(require=lx.TRANSITIVE_VERB, number=PL)
            return WhQ(wh_np=wh_np, role="obj", subject=subject, verb=verb,
                       negated=negated)
        vp = self.vp(wh_np.feats)
        return WhQ(wh_np=wh_np, role="subj", predicate=vp)


def parse_sentence(lexicon: lx.Lexicon, tokens: List[Token], index: int = 0) -> Sentence:
    parser = _SentenceParser(lexicon, tokens)
    try:
        return parser.parse(index)
    except _Fail:
        at = min(parser.furthest, len(tokens) - 1)
        at = max(at, 0)
        tok = tokens[at] if tokens else None
        pos = tok.pos if tok is not None else None
        if parser.furthest_agreement:
            raise AgreementError(f"expected {parser.furthest_expected}", pos) from None
        raise AceSyntaxError(f"expected {parser.furthest_expected}", pos) from None


def parse_text(lexicon: lx.Lexicon, text: str) -> List[Sentence]:
    """Tokenize and parse a whole text; sentence indexes are 0-based."""
    sentences = tokenize(lexicon, text)
    return [parse_sentence(lexicon, toks, i) for i, toks in enumerate(sentences)]
