"""Discourse construction, anaphora resolution, and DRS cleanup.

``build_sentence`` turns one parsed sentence into conditions of a growing
discourse DRS.  Noun phrases introduce referents where they occur:
indefinites as plain referents with adjective/gender/noun conditions (in that
order), proper names always in the topmost DRS, definite NPs, pronouns and
linked names as referents carrying a Pending placeholder.  ``resolve``
replaces each placeholder with the paper-style bookkeeping -- the(noun(E)) and
E=C for definites, eq for pronouns, synonym(named(F, abbr), named(F, full))
plus eq for linked names -- picking the closest accessible referent that
agrees in gender and number (definites additionally require the identical
noun predicate).  Definite NPs with no antecedent are accommodated with a
warning; unresolvable pronouns are a hard error.  ``cleanup`` applies the eq
substitutions, deletes bookkeeping conditions and substituted referents,
drops duplicates, and is idempotent.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from . import parser as ps
from .drs import (Atomic, Condition, Drs, Eq, IfThenC, Not, Or, Pending,
                  QueryC, Referent, Synonym, The)
from .errors import (AceError, PronounUnresolvable, SourcePos,
                     UnresolvedReference)
from .features import unify_gender
from .lexicon import PL, SG, Lexicon


@dataclass
class Resolution:
    """How an anaphoric NP was resolved; drives paraphrase annotations."""
    kind: str                     # definite | pronoun | name | name-reuse | accommodated
    antecedent: Optional[Referent] = None


class DiscourseState:
    def __init__(self):
        self.top = Drs()
        self.next_ref = 0
        self.next_seq = 0
        self.sentences = 0
        self.names: Dict[str, Referent] = {}
        self.warnings: List[str] = []
        self.pendings: List[Pending] = []

    def clone(self) -> "DiscourseState":
        import copy
        return copy.deepcopy(self)


class _Builder:
    def __init__(self, state: DiscourseState, lexicon: Lexicon):
        self.state = state
        self.lexicon = lexicon
        self.sent_idx = 0

    # -- helpers

    def seq_pos(self) -> SourcePos:
        pos = SourcePos(self.sent_idx, self.state.next_seq)
        self.state.next_seq += 1
        return pos

    def new_referent(self, drs: Drs, **attrs) -> Referent:
        ref = Referent(id=self.state.next_ref, sentence=self.sent_idx, **attrs)
        self.state.next_ref += 1
        drs.referents.append(ref)
        return ref

    def canon(self, leaf: ps.Leaf) -> str:
        return self.lexicon.representative(leaf.entry).canonical

    # -- entry

    def sentence(self, sent: ps.Sentence) -> Optional[QueryC]:
        self.sent_idx = sent.index
        body = sent.body
        if isinstance(body, (ps.YesNoQ, ps.WhQ)):
            return self.question(body)
        self.node(body, self.state.top)
        return None

    def node(self, n, drs: Drs) -> None:
        if isinstance(n, ps.Clause):
            self.clause(n, drs)
        elif isinstance(n, ps.IfThen):
            ant = drs.new_child()
            cons = drs.new_child(also_access=ant)
            drs.add(IfThenC(antecedent=ant, consequent=cons, pos=self.seq_pos()))
            self.node(n.antecedent, ant)
            self.node(n.consequent, cons)
        elif isinstance(n, ps.Coord):
            if n.op == "and":
                for part in n.parts:
                    self.node(part, drs)
            elif n.marker == "neither":
                ndrs = drs.new_child()
                drs.add(Not(inner=ndrs, pos=self.seq_pos()))
                alts = [ndrs.new_child() for _ in n.parts]
                ndrs.add(Or(alternatives=alts, pos=self.seq_pos()))
                for part, alt in zip(n.parts, alts):
                    self.node(part, alt)
            else:
                alts = [drs.new_child() for _ in n.parts]
                drs.add(Or(alternatives=alts, pos=self.seq_pos()))
                for part, alt in zip(n.parts, alts):
                    self.node(part, alt)
        else:
            raise AceError(f"cannot build {n.label}")

    # -- clauses

    def clause(self, cl: ps.Clause, drs: Drs) -> None:
        for target, srefs in self.subject_branches(cl.subject, drs):
            self.vp(cl.predicate, target, srefs)

    def subject_branches(self, subject, drs: Drs) -> List[Tuple[Drs, List[Referent]]]:
        """Scope scaffolding for a subject: where the predicate conditions go
        and which referents fill the subject slot there."""
        if isinstance(subject, ps.NPCoord):
            if subject.op == "and":
                refs = [self.np_conditions(p, drs) for p in subject.parts]
                return [(drs, refs)]
            container = drs
            if subject.marker == "neither":
                ndrs = drs.new_child()
                drs.add(Not(inner=ndrs, pos=self.seq_pos()))
                container = ndrs
            alts = [container.new_child() for _ in subject.parts]
            container.add(Or(alternatives=alts, pos=self.seq_pos()))
            return [(alt, [self.np_conditions(p, alt)])
                    for p, alt in zip(subject.parts, alts)]
        kind = subject.kind
        if kind == "every":
            ant = drs.new_child()
            cons = drs.new_child(also_access=ant)
            drs.add(IfThenC(antecedent=ant, consequent=cons, pos=self.seq_pos()))
            ref = self.np_conditions(subject, ant)
            return [(cons, [ref])]
        if kind == "no":
            ndrs = drs.new_child()
            drs.add(Not(inner=ndrs, pos=self.seq_pos()))
            ref = self.np_conditions(subject, ndrs)
            return [(ndrs, [ref])]
        ref = self.np_conditions(subject, drs)
        return [(drs, [ref])]

    # -- noun phrases

    def np_surface(self, np: ps.NP) -> str:
        if np.pname is not None:
            entry = self.lexicon.representative(np.pname.entry)
            return entry.display or entry.canonical
        if np.pronoun is not None:
            return np.pronoun.surface.lower()
        parts = []
        if np.wh is not None:
            parts.append(np.wh.surface.lower())
        elif np.det is not None:
            parts.append(np.det.surface.lower())
        parts.extend(a.surface.lower() for a in np.adjectives)
        if np.noun is not None:
            parts.append(np.noun.surface.lower())
        return " ".join(parts)

    def np_conditions(self, np: ps.NP, drs: Drs) -> Referent:
        """Emit the conditions of one (non-coordinated) NP, return its referent."""
        kind = np.kind

        if kind == "name":
            return self.name_np(np, drs)

        if kind == "pron":
            word = np.pronoun.surface.lower()
            gender, number = ps._PRONOUN_FEATS[word][0], np.pronoun.number
            ref = self.new_referent(drs, number=number, surface=word)
            pending = Pending(kind="pronoun", referent=ref, gender=gender,
                              pos=self.seq_pos())
            pending.home = drs
            pending.np = np
            pending.tok = np.pronoun.token.pos
            drs.add(pending)
            self.state.pendings.append(pending)
            np.referent_id = ref.id
            return ref

        if kind == "wh":
            noun_canon = self.canon(np.noun) if np.noun is not None else None
            gender = (np.noun.entry.gender if np.noun is not None
                      else np.feats.get("gender"))
            ref = self.new_referent(drs, gender=gender, number=SG,
                                    noun=noun_canon, surface=self.np_surface(np),
                                    is_wh=True, wh_word=np.wh.surface.lower())
            for adj in np.adjectives:
                drs.add(Atomic(self.canon(adj), (ref,), pos=self.seq_pos()))
            if np.noun is not None:
                drs.add(Atomic(noun_canon, (ref,), pos=self.seq_pos()))
            if np.rel is not None:
                self.rel_clause(np.rel, ref, drs)
            np.referent_id = ref.id
            return ref

        noun_canon = self.canon(np.noun)
        gender = np.noun.entry.gender
        number = np.noun.number
        ref = self.new_referent(drs, gender=gender, number=number,
                                noun=noun_canon, surface=self.np_surface(np))
        np.referent_id = ref.id

        for adj in np.adjectives:
            drs.add(Atomic(self.canon(adj), (ref,), pos=self.seq_pos()))
        drs.add(Atomic("gender", (ref, gender), pos=self.seq_pos()))

        if kind == "def":
            pending = Pending(kind="definite", referent=ref, noun=noun_canon,
                              pos=self.seq_pos())
            pending.home = drs
            pending.np = np
            pending.tok = np.noun.token.pos
            drs.add(pending)
            self.state.pendings.append(pending)
        else:
            # indefinites, every-restrictors and no-NPs assert the noun directly
            drs.add(Atomic(noun_canon, (ref,), pos=self.seq_pos()))

        if np.rel is not None:
            self.rel_clause(np.rel, ref, drs)
        return ref

    def name_np(self, np: ps.NP, drs: Drs) -> Referent:
        entry = np.pname.entry
        rep = self.lexicon.representative(entry)
        if entry.link is not None:
            # abbreviation or synonym: local referent, resolved against the
            # canonical name's referent
            ref = self.new_referent(drs, gender=rep.gender, number=SG,
                                    surface=rep.display or rep.canonical)
            drs.add(Atomic("gender", (ref, rep.gender), pos=self.seq_pos()))
            pending = Pending(kind="name", referent=ref, own=entry.canonical,
                              target=rep.canonical, pos=self.seq_pos())
            pending.home = drs
            pending.np = np
            pending.tok = np.pname.token.pos
            drs.add(pending)
            self.state.pendings.append(pending)
            np.referent_id = ref.id
            return ref
        existing = self.state.names.get(entry.canonical)
        if existing is not None:
            np.referent_id = existing.id
            np.resolution = Resolution("name-reuse", existing)
            return existing
        return self.introduce_name(entry.canonical, rep.gender,
                                    rep.display or rep.canonical, np)

    def introduce_name(self, canonical: str, gender: Optional[str],
                       display: str, np: Optional[ps.NP] = None) -> Referent:
        """Proper names live in the topmost DRS regardless of where they occur."""
        top = self.state.top
        ref = self.new_referent(top, gender=gender, number=SG, named=canonical,
                                surface=display)
        top.add(Atomic("gender", (ref, gender), pos=self.seq_pos()))
        top.add(Atomic("named", (ref, canonical), pos=self.seq_pos()))
        self.state.names[canonical] = ref
        if np is not None:
            np.referent_id = ref.id
            np.resolution = Resolution("name-new", None)
        return ref

    # -- relative clauses

    def rel_clause(self, rel, head: Referent, drs: Drs) -> None:
        if isinstance(rel, ps.RelSubj):
            self.vp(rel.vp, drs, [head])
            return
        # object gap: inner subject + transitive verb, head fills the object
        for target, srefs in self.subject_branches(rel.subject, drs):
            verb = self.canon(rel.verb)
            if rel.negated:
                ndrs = target.new_child()
                target.add(Not(inner=ndrs, pos=self.seq_pos()))
                for s in srefs:
                    ndrs.add(Atomic(verb, (s, head), pos=self.seq_pos()))
            else:
                for s in srefs:
                    target.add(Atomic(verb, (s, head), pos=self.seq_pos()))

    # -- verb phrases

    def vp(self, vp, drs: Drs, subject_refs: List[Referent]) -> None:
        if isinstance(vp, ps.VPCoord):
            if vp.op == "and":
                for part in vp.parts:
                    self.vp(part, drs, subject_refs)
            else:
                alts = [drs.new_child() for _ in vp.parts]
                drs.add(Or(alternatives=alts, pos=self.seq_pos()))
                for part, alt in zip(vp.parts, alts):
                    self.vp(part, alt, subject_refs)
            return

        target = drs
        if vp.negated:
            target = drs.new_child()
            drs.add(Not(inner=target, pos=self.seq_pos()))

        if vp.kind == "cop-adj":
            adj = self.canon(vp.comp_adj)
            for s in subject_refs:
                target.add(Atomic(adj, (s,), pos=self.seq_pos()))
            return
        if vp.kind == "cop-np":
            comp = vp.comp_np
            noun = self.canon(comp.noun)
            for s in subject_refs:
                for a in comp.adjectives:
                    target.add(Atomic(self.canon(a), (s,), pos=self.seq_pos()))
                target.add(Atomic(noun, (s,), pos=self.seq_pos()))
                if comp.rel is not None:
                    self.rel_clause(comp.rel, s, target)
            return

        verb = self.canon(vp.verb)
        if vp.obj is None:
            for s in subject_refs:
                target.add(Atomic(verb, (s,), pos=self.seq_pos()))
            return
        self.object_conditions(vp.obj, verb, subject_refs, target)

    def object_conditions(self, obj, verb: str, subject_refs: List[Referent],
                          drs: Drs) -> None:
        if isinstance(obj, ps.NPCoord):
            if obj.op == "and":
                # the verb distributes over every conjunct (ellipsis expansion)
                for part in obj.parts:
                    oref = self.np_conditions(part, drs)
                    for s in subject_refs:
                        drs.add(Atomic(verb, (s, oref), pos=self.seq_pos()))
                return
            container = drs
            if obj.marker == "neither":
                ndrs = drs.new_child()
                drs.add(Not(inner=ndrs, pos=self.seq_pos()))
                container = ndrs
            alts = [container.new_child() for _ in obj.parts]
            container.add(Or(alternatives=alts, pos=self.seq_pos()))
            for part, alt in zip(obj.parts, alts):
                oref = self.np_conditions(part, alt)
                for s in subject_refs:
                    alt.add(Atomic(verb, (s, oref), pos=self.seq_pos()))
            return
        kind = obj.kind
        if kind == "every":
            ant = drs.new_child()
            cons = drs.new_child(also_access=ant)
            drs.add(IfThenC(antecedent=ant, consequent=cons, pos=self.seq_pos()))
            oref = self.np_conditions(obj, ant)
            for s in subject_refs:
                cons.add(Atomic(verb, (s, oref), pos=self.seq_pos()))
            return
        if kind == "no":
            ndrs = drs.new_child()
            drs.add(Not(inner=ndrs, pos=self.seq_pos()))
            oref = self.np_conditions(obj, ndrs)
            for s in subject_refs:
                ndrs.add(Atomic(verb, (s, oref), pos=self.seq_pos()))
            return
        oref = self.np_conditions(obj, drs)
        for s in subject_refs:
            drs.add(Atomic(verb, (s, oref), pos=self.seq_pos()))

    # -- questions

    def question(self, q) -> QueryC:
        top = self.state.top
        body = top.new_child()
        wh_refs: List[Referent] = []
        if isinstance(q, ps.YesNoQ):
            for target, srefs in self.subject_branches(q.subject, body):
                self.vp(q.predicate, target, srefs)
        else:
            wref = self.np_conditions(q.wh_np, body)
            wh_refs.append(wref)
            if q.role == "subj":
                self.vp(q.predicate, body, [wref])
            else:
                verb = self.canon(q.verb)
                for target, srefs in self.subject_branches(q.subject, body):
                    inner = target
                    if q.negated:
                        inner = target.new_child()
                        target.add(Not(inner=inner, pos=self.seq_pos()))
                    for s in srefs:
                        inner.add(Atomic(verb, (s, wref), pos=self.seq_pos()))
        query = QueryC(body=body, wh=wh_refs, pos=self.seq_pos())
        top.add(query)
        return query


def build_sentence(state: DiscourseState, sentence: ps.Sentence,
                   lexicon: Lexicon) -> Optional[QueryC]:
    builder = _Builder(state, lexicon)
    result = builder.sentence(sentence)
    state.sentences = max(state.sentences, sentence.index + 1)
    return result


# ---------------------------------------------------------------------------
# anaphora resolution


def _accessible_referents(pending: Pending) -> List[Referent]:
    out: List[Referent] = []
    for drs in pending.home.accessible():
        out.extend(drs.referents)
    return [r for r in out if r.id < pending.referent.id]


def _candidates(pending: Pending) -> List[Referent]:
    anaphor = pending.referent
    found = []
    for cand in _accessible_referents(pending):
        if cand.is_wh:
            continue
        if pending.kind == "name":
            if cand.named == pending.target:
                found.append(cand)
            continue
        if cand.number != anaphor.number:
            continue
        if pending.kind == "definite":
            if cand.noun == pending.noun:
                found.append(cand)
            continue
        # pronoun: gender must be compatible (they carries no constraint)
        if pending.gender is None or unify_gender(cand.gender, pending.gender) is not None:
            found.append(cand)
    return found


def _replace_pending(pending: Pending, replacement: List[Condition]) -> None:
    conds = pending.home.conditions
    idx = next(i for i, c in enumerate(conds) if c is pending)
    conds[idx:idx + 1] = replacement


def resolve(state: DiscourseState, lexicon: Lexicon,
            strict_definites: bool = False) -> List[str]:
    """Resolve all pending anaphors, in introduction order.

    Returns the warnings produced by accommodation.  With ``strict_definites``
    (queries) an unresolvable definite NP raises unresolved-reference instead
    of accommodating.
    """
    new_warnings: List[str] = []
    for pending in list(state.pendings):
        ref = pending.referent
        candidates = _candidates(pending)
        antecedent = max(candidates, key=lambda c: c.id) if candidates else None

        if pending.kind == "definite":
            if antecedent is None:
                surface = pending.noun.replace("_", " ")
                if strict_definites:
                    raise UnresolvedReference(
                        f"'the {surface}' has no antecedent",
                        getattr(pending, "tok", None))
                _replace_pending(pending, [
                    Atomic(pending.noun, (ref,), pos=pending.pos)])
                warning = (f"sentence {ref.sentence + 1}: 'the {surface}' has no "
                           f"antecedent; introduced a new object")
                new_warnings.append(warning)
                if pending.np is not None:
                    pending.np.resolution = Resolution("accommodated", None)
            else:
                _replace_pending(pending, [
                    The(Atomic(pending.noun, (ref,)), pos=pending.pos),
                    Eq(ref, antecedent, pos=pending.pos)])
                if pending.np is not None:
                    pending.np.resolution = Resolution("definite", antecedent)

        elif pending.kind == "pronoun":
            if antecedent is None:
                word = ref.surface
                raise PronounUnresolvable(f"'{word}' has no antecedent",
                                          getattr(pending, "tok", None))
            gender = pending.gender or antecedent.gender
            ref.gender = gender
            _replace_pending(pending, [
                Atomic("gender", (ref, gender), pos=pending.pos),
                Eq(ref, antecedent, pos=pending.pos)])
            if pending.np is not None:
                pending.np.resolution = Resolution("pronoun", antecedent)

        else:  # linked proper name
            if antecedent is None:
                target_entries = [e for e in lexicon.find_canonical(pending.target)]
                display = pending.target
                gender = ref.gender
                for entry in target_entries:
                    display = entry.display or display
                    gender = entry.gender or gender
                builder = _Builder(state, lexicon)
                builder.sent_idx = ref.sentence
                antecedent = builder.introduce_name(pending.target, gender, display)
                warning = (f"sentence {ref.sentence + 1}: name '{pending.own}' has "
                           f"no antecedent; introduced '{display}'")
                new_warnings.append(warning)
            _replace_pending(pending, [
                Synonym(Atomic("named", (ref, pending.own)),
                        Atomic("named", (ref, pending.target)), pos=pending.pos),
                Eq(ref, antecedent, pos=pending.pos)])
            if pending.np is not None:
                pending.np.resolution = Resolution("name", antecedent)

        state.pendings.remove(pending)

    state.warnings.extend(new_warnings)
    return new_warnings


# ---------------------------------------------------------------------------
# cleanup


def _cond_key(cond: Condition):
    if isinstance(cond, Atomic):
        return ("atom", cond.pred,
                tuple(("r", a.id) if isinstance(a, Referent) else ("s", a)
                      for a in cond.args))
    if isinstance(cond, Not):
        return ("not", _drs_key(cond.inner))
    if isinstance(cond, Or):
        return ("or", tuple(_drs_key(d) for d in cond.alternatives))
    if isinstance(cond, IfThenC):
        return ("ifthen", _drs_key(cond.antecedent), _drs_key(cond.consequent))
    if isinstance(cond, QueryC):
        return ("query", _drs_key(cond.body))
    return ("other", id(cond))


def _drs_key(drs: Drs):
    return (tuple(r.id for r in drs.referents),
            tuple(_cond_key(c) for c in drs.conditions))


def cleanup(drs: Drs) -> Drs:
    """Pure: returns a cleaned clone, leaving the pre-cleanup DRS intact."""
    root = drs.clone()

    # eq substitutions, resolved transitively (anaphor := antecedent)
    mapping: Dict[int, Referent] = {}
    for _node, cond in root.walk():
        if isinstance(cond, Eq):
            mapping[cond.left.id] = cond.right

    def find(ref: Referent) -> Referent:
        while ref.id in mapping:
            ref = mapping[ref.id]
        return ref

    def is_bookkeeping(cond: Condition) -> bool:
        if isinstance(cond, (The, Eq, Synonym, Pending)):
            return True
        return (isinstance(cond, Atomic) and cond.pred == "gender"
                and len(cond.args) == 2 and isinstance(cond.args[1], str))

    def rewrite(node: Drs, inherited: frozenset) -> None:
        node.referents = [r for r in node.referents if r.id not in mapping]
        seen = set(inherited)
        kept: List[Condition] = []
        for cond in node.conditions:
            if is_bookkeeping(cond):
                continue
            if isinstance(cond, Atomic):
                cond.args = tuple(find(a) if isinstance(a, Referent) else a
                                  for a in cond.args)
            elif isinstance(cond, Not):
                rewrite(cond.inner, frozenset(seen))
            elif isinstance(cond, Or):
                for alt in cond.alternatives:
                    rewrite(alt, frozenset(seen))
            elif isinstance(cond, IfThenC):
                rewrite(cond.antecedent, frozenset(seen))
                ant_keys = {_cond_key(c) for c in cond.antecedent.conditions}
                rewrite(cond.consequent, frozenset(seen | ant_keys))
            elif isinstance(cond, QueryC):
                # query goals stay explicit even when the discourse already
                # states them; proving a known fact is cheap and inspectable
                rewrite(cond.body, frozenset())
            key = _cond_key(cond)
            if key in seen:
                continue
            seen.add(key)
            kept.append(cond)
        node.conditions = kept

    rewrite(root, frozenset())
    return root
