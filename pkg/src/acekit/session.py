"""Dialog sessions: stage-then-accept assimilation, queries, execution.

A session holds a lexicon, the committed discourse, and the knowledge base.
``submit`` parses, builds, and resolves sentences into a staged copy of the
discourse and reports paraphrases; nothing reaches the KB until ``accept``,
which cleans the whole staged DRS, translates only the newly staged
sentences, and asserts the clauses (facts deduplicated).  Submitting again
before accepting replaces the staged batch, which is how a rephrase works.
Queries run on a throwaway clone and never change the KB or the discourse.
Re-running a session's accepted batches against the same lexicon reproduces
the KB dump exactly.
"""

import json
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from . import lexicon as lx
from . import parser as ps
from .discourse import DiscourseState, build_sentence, cleanup, resolve
from .drs import QueryC, dump as dump_drs
from .errors import AceError, AceSyntaxError, SessionStateError
from .executor import (ExecutionResult, InterfaceBindings, plan, run,
                       scripted_env)
from .logic import (DEFAULT_DEPTH_LIMIT, Clause, KnowledgeBase, Literal,
                    NamedConst, check_constraints, solve)
from .paraphrase import paraphrase_sentence
from .translate import (QueryGoal, ReferentIndex, Skolemizer, generate_answer,
                        translate, translate_query, verb_predicates)


@dataclass
class SubmitOutcome:
    status: str                              # ok | error
    paraphrases: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    staged_sentences: int = 0
    error: Optional[AceError] = None


@dataclass
class QueryOutcome:
    answer: str
    bindings: List[str] = field(default_factory=list)


class Session:
    def __init__(self, lexicon: lx.Lexicon,
                 depth_limit: int = DEFAULT_DEPTH_LIMIT):
        self.lexicon = lexicon
        self.committed = DiscourseState()
        self.staged: Optional[DiscourseState] = None
        self.staged_text: Optional[str] = None
        self.staged_trees: List[ps.Sentence] = []
        self.kb = KnowledgeBase()
        self.sk = Skolemizer()
        self.accepted_log: List[str] = []
        self.lexicon_log: List[str] = []
        self.depth_limit = depth_limit

    # -- assimilation

    def submit(self, text: str) -> SubmitOutcome:
        """Parse, build, and resolve; stage the parsed prefix.

        Stops at the first failing sentence, keeping the sentences before it
        staged so the user can fix the lexicon or rephrase and resubmit."""
        outcome = SubmitOutcome(status="ok")
        self.staged = None
        self.staged_text = None
        self.staged_trees = []
        base = self.committed.sentences
        try:
            token_sentences = ps.tokenize(self.lexicon, text)
        except AceError as exc:
            outcome.status = "error"
            outcome.error = exc
            return outcome

        state = self.committed.clone()
        staged_parts: List[str] = []
        trees: List[ps.Sentence] = []
        for i, tokens in enumerate(token_sentences):
            snapshot = state.clone()
            try:
                tree = ps.parse_sentence(self.lexicon, tokens, base + i)
                build_sentence(state, tree, self.lexicon)
                outcome.warnings.extend(resolve(state, self.lexicon))
            except AceError as exc:
                state = snapshot
                outcome.status = "error"
                outcome.error = exc
                break
            trees.append(tree)
            outcome.paraphrases.append(
                paraphrase_sentence(tree, self.lexicon))
            staged_parts.append(" ".join(t.surface for t in tokens[:-1])
                                + tokens[-1].surface)
        if trees:
            self.staged = state
            self.staged_text = " ".join(staged_parts)
            self.staged_trees = trees
        outcome.staged_sentences = len(trees)
        return outcome

    def accept(self):
        """Commit the staged sentences: cleanup, translate, assert."""
        if self.staged is None:
            raise SessionStateError("nothing is staged; submit sentences first")
        cleaned = cleanup(self.staged.top)
        sk = self.sk.clone()
        result = translate(cleaned, sk, from_sentence=self.committed.sentences)
        kb = self.kb.clone()
        asserted = 0
        for clause in result.clauses:
            if not clause.body and clause.head is not None \
                    and kb.has_fact(clause.head):
                continue
            kb.assert_clause(clause)
            asserted += 1
        warnings = list(result.warnings)
        for constraint in check_constraints(kb, self.depth_limit):
            warnings.append(f"constraint violated: {constraint}")
        # all steps succeeded; commit atomically
        self.sk = sk
        self.kb = kb
        self.committed = self.staged
        self.staged = None
        self.staged_trees = []
        self.accepted_log.append(self.staged_text)
        self.staged_text = None
        return asserted, warnings

    # -- questions

    def query(self, text: str) -> QueryOutcome:
        token_sentences = ps.tokenize(self.lexicon, text)
        if len(token_sentences) != 1:
            raise AceSyntaxError("ask one question at a time")
        if token_sentences[0][-1].surface != "?":
            raise AceSyntaxError("expected a question ending in '?'")
        tree = ps.parse_sentence(self.lexicon, token_sentences[0],
                                 self.committed.sentences)
        if not tree.is_question:
            raise AceSyntaxError("expected a question ending in '?'")
        state = self.committed.clone()
        build_sentence(state, tree, self.lexicon)
        resolve(state, self.lexicon, strict_definites=True)
        cleaned = cleanup(state.top)
        query_cond = next(c for c in reversed(cleaned.conditions)
                          if isinstance(c, QueryC))
        goal = translate_query(query_cond, self.sk.clone())
        solutions = solve(self.kb, goal.goals, self.depth_limit)
        index = ReferentIndex.from_kb(self.kb, self.lexicon)
        answer = generate_answer(goal, solutions, index)
        bindings = []
        if goal.wh_var is not None:
            from .logic import resolve_term
            for subst in solutions:
                term = str(resolve_term(goal.wh_var, subst))
                if term not in bindings:
                    bindings.append(term)
        return QueryOutcome(answer=answer, bindings=bindings)

    # -- lexicon editing

    def lexicon_edit(self, record_line: str) -> None:
        entry = lx.parse_record(record_line)
        if entry is None:
            raise lx.LexiconParseError("empty record")
        if entry.cls == lx.LINK_CLASS:
            kind, target = entry.forms[0]
            self.lexicon = lx.apply_link(self.lexicon, kind,
                                         entry.canonical, target)
        else:
            self.lexicon = self.lexicon.add_entry(entry)
        self.lexicon_log.append(record_line.strip())

    # -- execution

    def execute(self, answers: Optional[List[str]] = None,
                interactive: Optional[Callable[[str], Optional[str]]] = None,
                raw: bool = False, emit=None,
                interfaces: Optional[InterfaceBindings] = None) -> ExecutionResult:
        cleaned = cleanup(self.committed.top)
        sk = self.sk.clone()
        exec_plan = plan(cleaned, sk, verb_predicates(self.lexicon))
        self.sk = sk
        scripted = scripted_env(answers or [])

        def env(prompt: str) -> Optional[str]:
            answer = scripted(prompt)
            if answer is None and interactive is not None:
                return interactive(prompt)
            return answer

        return run(exec_plan, self.kb, env, self.lexicon,
                   interfaces=interfaces, depth_limit=self.depth_limit,
                   raw=raw, emit=emit, answer_handler=self._scaffold_answer)

    def _ensure_name(self, word: str, gender: Optional[str]) -> str:
        canonical = lx.canonical_symbol(word)
        if not self.lexicon.find_canonical(canonical):
            record = lx.pname_entry(canonical, display=word,
                                    gender=gender or "common")
            self.lexicon = self.lexicon.add_entry(record)
            self.lexicon_log.append(lx.record_line(record))
        return canonical

    def _scaffold_answer(self, text: str, pred: str, _lexicon):
        """Prompt answers: a bare proper name, or a copula definition."""
        warnings: List[str] = []
        stripped = text.strip().rstrip(".").strip()
        noun_entry = (self.lexicon.get(lx.COMMON_NOUN, pred)
                      or self.lexicon.get(lx.COMPOUND_NOUN, pred))
        gender = noun_entry.gender if noun_entry is not None else None
        if " " not in stripped and stripped.isalpha():
            canonical = self._ensure_name(stripped, gender)
            return [Clause(Literal(pred, (NamedConst(canonical),)))], warnings
        # full sentence: parse as a copula definition
        sentence_text = text.strip()
        if not sentence_text.endswith((".", "?")):
            sentence_text += "."
        unknown = lx.spell_check(self.lexicon, sentence_text)
        for word in unknown:
            if word[0].isupper():
                self._ensure_name(word, gender)
            else:
                raise AceError(f"unknown word in answer: {word}")
        trees = ps.parse_text(self.lexicon, sentence_text)
        if len(trees) != 1:
            raise AceError("answer must be a single sentence")
        body = trees[0].body
        if not isinstance(body, ps.Clause) or not isinstance(body.subject, ps.NP) \
                or body.subject.kind != "name" \
                or not isinstance(body.predicate, ps.VP) \
                or body.predicate.kind not in ("cop-np", "cop-adj") \
                or body.predicate.negated:
            raise AceError("an answer must be a name or a simple definition "
                           "like 'John is a customer.'")
        rep = self.lexicon.representative(body.subject.pname.entry)
        term = NamedConst(rep.canonical)
        vp = body.predicate
        clauses = []
        if vp.kind == "cop-adj":
            adj = self.lexicon.representative(vp.comp_adj.entry).canonical
            clauses.append(Clause(Literal(adj, (term,))))
        else:
            comp = vp.comp_np
            for a in comp.adjectives:
                adj = self.lexicon.representative(a.entry).canonical
                clauses.append(Clause(Literal(adj, (term,))))
            noun = self.lexicon.representative(comp.noun.entry).canonical
            clauses.append(Clause(Literal(noun, (term,))))
        return clauses, warnings

    # -- views

    def kb_dump(self) -> str:
        return self.kb.dump()

    def drs_pre(self) -> str:
        state = self.staged if self.staged is not None else self.committed
        return dump_drs(state.top)

    def drs_cleaned(self) -> str:
        state = self.staged if self.staged is not None else self.committed
        return dump_drs(cleanup(state.top))

    # -- persistence and replay

    def save(self, path: str) -> None:
        data = {"lexicon": lx.save(self.lexicon),
                "accepted": list(self.accepted_log)}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2)

    @classmethod
    def load(cls, path: str,
             depth_limit: int = DEFAULT_DEPTH_LIMIT) -> "Session":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        lexicon = lx.load(data["lexicon"])
        session = cls(lexicon, depth_limit=depth_limit)
        for batch in data["accepted"]:
            outcome = session.submit(batch)
            if outcome.status != "ok":
                raise SessionStateError(
                    f"saved batch no longer parses: {outcome.error}")
            session.accept()
        return session


def replay(session: Session) -> Session:
    """Fresh session fed the accepted log; KB dumps must match."""
    fresh = Session(session.lexicon, depth_limit=session.depth_limit)
    for batch in session.accepted_log:
        outcome = fresh.submit(batch)
        if outcome.status != "ok":
            raise SessionStateError(f"batch failed on replay: {outcome.error}")
        fresh.accept()
    return fresh
