"""Paraphrases of resolved sentences.

Every anaphoric NP (definite, pronoun, abbreviation, reused name) gets a
bracket annotation naming its antecedent and the sentence that introduced it:

    SimpleMat [= SimpleMat, sentence 1] rejects the card [= a card, sentence 1].

A shared verb over an and-coordinated object is expanded, repeating the
subject, so the reading the system chose is visible.  Accommodated definites
stay unannotated (the warning already flags them).  ``strip_annotations``
removes the brackets; re-submitting a stripped paraphrase in the same
discourse context yields an identical cleaned DRS.
"""

import re
from typing import List, Optional

from . import parser as ps
from .lexicon import Lexicon

_ANNOTATION_RE = re.compile(r" \[=[^\]]*\]")

_ANNOTATED_KINDS = ("definite", "pronoun", "name", "name-reuse")


def strip_annotations(text: str) -> str:
    return _ANNOTATION_RE.sub("", text)


def _annotation(np: ps.NP) -> str:
    res = np.resolution
    if res is None or res.kind not in _ANNOTATED_KINDS or res.antecedent is None:
        return ""
    ante = res.antecedent
    return f" [= {ante.surface}, sentence {ante.sentence + 1}]"


def _aux_for(np_node) -> str:
    feats = getattr(np_node, "feats", None)
    agr = feats.get("agr") if feats is not None else None
    return "do" if agr == "third-pl" else "does"


class _Renderer:
    def __init__(self, lexicon: Lexicon, annotate: bool = True):
        self.lexicon = lexicon
        self.annotate = annotate

    def np(self, np: ps.NP, annotate: Optional[bool] = None) -> str:
        annotate = self.annotate if annotate is None else annotate
        if np.pname is not None:
            entry = self.lexicon.representative(np.pname.entry)
            text = entry.display or entry.canonical
        elif np.pronoun is not None:
            text = np.pronoun.surface.lower()
        elif np.wh is not None:
            parts = [np.wh.surface.lower()]
            parts.extend(a.surface.lower() for a in np.adjectives)
            if np.noun is not None:
                parts.append(np.noun.surface.lower())
            text = " ".join(parts)
        else:
            parts = []
            if np.det is not None:
                parts.append(np.det.surface.lower())
            parts.extend(a.surface.lower() for a in np.adjectives)
            parts.append(np.noun.surface.lower())
            text = " ".join(parts)
        if annotate:
            text += _annotation(np)
        if np.rel is not None:
            text += " " + self.rel(np.rel)
        return text

    def np_or_coord(self, node, annotate: Optional[bool] = None) -> str:
        if isinstance(node, ps.NPCoord):
            parts = [self.np(p, annotate) for p in node.parts]
            if node.marker == "either":
                return "either " + " or ".join(parts)
            if node.marker == "neither":
                return "neither " + " nor ".join(parts)
            return f" {node.op} ".join(parts)
        return self.np(node, annotate)

    def rel(self, rel) -> str:
        if isinstance(rel, ps.RelSubj):
            return f"{rel.relpro.surface.lower()} {self.vp(rel.vp)}"
        subject = self.np_or_coord(rel.subject)
        if rel.negated:
            aux = _aux_for(rel.subject)
            verb = f"{aux} not {rel.verb.surface.lower()}"
        else:
            verb = rel.verb.surface.lower()
        return f"{rel.relpro.surface.lower()} {subject} {verb}"

    def vp(self, vp) -> str:
        if isinstance(vp, ps.VPCoord):
            return f" {vp.op} ".join(self.vp(p) for p in vp.parts)
        if vp.kind == "verb":
            if vp.negated:
                head = f"{vp.aux.surface.lower()} not {vp.verb.surface.lower()}"
            else:
                head = vp.verb.surface.lower()
            if vp.obj is not None:
                return f"{head} {self.np_or_coord(vp.obj)}"
            return head
        aux = vp.aux.surface.lower()
        neg = " not" if vp.negated else ""
        if vp.kind == "cop-adj":
            return f"{aux}{neg} {vp.comp_adj.surface.lower()}"
        return f"{aux}{neg} {self.np(vp.comp_np)}"

    # -- clauses and sentences

    def _subject_copy(self, subject: ps.NP) -> str:
        """Repeat a subject in an ellipsis expansion without changing what it
        refers to: indefinites repeat as definites, everything else verbatim."""
        kind = subject.kind
        if kind == "indef":
            return f"the {subject.noun.surface.lower()}"
        return self.np(subject, annotate=False)

    def clause(self, cl: ps.Clause) -> str:
        pred = cl.predicate
        expandable = (isinstance(pred, ps.VP) and pred.kind == "verb"
                      and not pred.negated
                      and isinstance(pred.obj, ps.NPCoord)
                      and pred.obj.op == "and"
                      and isinstance(cl.subject, ps.NP)
                      and cl.subject.kind in ("def", "name", "pron", "indef")
                      and cl.subject.rel is None)
        if not expandable:
            return f"{self.np_or_coord(cl.subject)} {self.vp(pred)}"
        verb = pred.verb.surface.lower()
        first = self.np(cl.subject)
        copy = self._subject_copy(cl.subject)
        pieces = []
        for i, part in enumerate(pred.obj.parts):
            subject = first if i == 0 else copy
            pieces.append(f"{subject} {verb} {self.np(part)}")
        return " and ".join(pieces)

    def body(self, node) -> str:
        if isinstance(node, ps.Clause):
            return self.clause(node)
        if isinstance(node, ps.IfThen):
            return (f"if {self.body(node.antecedent)} "
                    f"then {self.body(node.consequent)}")
        if isinstance(node, ps.Coord):
            parts = [self.body(p) for p in node.parts]
            if node.marker == "either":
                return "either " + " or ".join(parts)
            if node.marker == "neither":
                return "neither " + " nor ".join(parts)
            return f" {node.op} ".join(parts)
        if isinstance(node, ps.YesNoQ):
            return self.yesno(node)
        if isinstance(node, ps.WhQ):
            return self.whq(node)
        raise ValueError(f"cannot render {node.label}")

    def yesno(self, q: ps.YesNoQ) -> str:
        vp = q.predicate
        subject = self.np_or_coord(q.subject)
        aux = vp.aux.surface.lower()
        neg = " not" if vp.negated else ""
        if vp.kind == "verb":
            rest = vp.verb.surface.lower()
            if vp.obj is not None:
                rest += f" {self.np_or_coord(vp.obj)}"
            return f"{aux} {subject}{neg} {rest}"
        if vp.kind == "cop-adj":
            return f"{aux} {subject}{neg} {vp.comp_adj.surface.lower()}"
        return f"{aux} {subject}{neg} {self.np(vp.comp_np)}"

    def whq(self, q: ps.WhQ) -> str:
        wh = self.np(q.wh_np)
        if q.role == "subj":
            return f"{wh} {self.vp(q.predicate)}"
        aux = _aux_for(q.subject)
        subject = self.np_or_coord(q.subject)
        neg = " not" if q.negated else ""
        return f"{wh} {aux} {subject}{neg} {q.verb.surface.lower()}"

    def sentence(self, sent: ps.Sentence) -> str:
        text = self.body(sent.body)
        text = text[0].upper() + text[1:]
        return text + sent.terminator.surface


def paraphrase_sentence(sent: ps.Sentence, lexicon: Lexicon,
                        annotate: bool = True) -> str:
    return _Renderer(lexicon, annotate).sentence(sent)


def paraphrase_text(sentences: List[ps.Sentence], lexicon: Lexicon,
                    annotate: bool = True) -> str:
    renderer = _Renderer(lexicon, annotate)
    return " ".join(renderer.sentence(s) for s in sentences)
