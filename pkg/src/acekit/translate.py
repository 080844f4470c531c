"""Cleaned DRS to clauses, questions to goals, bindings to answers.

Top-level referents become numbered constants in introduction order.  Each
ifthen condition becomes one clause per consequent atom: antecedent atoms are
the shared body (single-condition negations as neg literals), consequent
referents become Skolem functions of the antecedent variables, numbered by one
global counter so that incremental assimilation and one-shot translation agree.
Top-level negations become integrity constraints (false :- body).  Shapes with
no clause form (disjunction at the top level or in an antecedent, negation or
nesting in a consequent) are rejected as untranslatable.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .drs import (Arg, Atomic, Condition, Drs, IfThenC, Not, Or, Pending,
                  QueryC, Referent, referent_letter)
from .errors import AceError, SourcePos, UntranslatableNesting
from .lexicon import (COMMON_NOUN, COMPOUND_NOUN, INTRANSITIVE_VERB,
                      PROPER_NAME, SG, TRANSITIVE_VERB, Lexicon)
from .logic import (Clause, KnowledgeBase, Literal, NamedConst, SkolemConst,
                    SkolemFn, Solutions, Term, Var, resolve_term)


class Skolemizer:
    """Stable referent-to-term mapping, shared across incremental accepts."""

    def __init__(self):
        self.map: Dict[int, Term] = {}
        self.next_const = 0
        self.next_fn = 0

    def const_for(self, ref: Referent) -> Term:
        term = self.map.get(ref.id)
        if term is None:
            term = SkolemConst(self.next_const)
            self.next_const += 1
            self.map[ref.id] = term
        return term

    def fn_for(self, ref: Referent, args: Tuple[Term, ...]) -> Term:
        term = self.map.get(ref.id)
        if term is None:
            self.next_fn += 1
            term = SkolemFn(f"sk{self.next_fn}", args)
            self.map[ref.id] = term
        return term

    def clone(self) -> "Skolemizer":
        out = Skolemizer()
        out.map = dict(self.map)
        out.next_const = self.next_const
        out.next_fn = self.next_fn
        return out


@dataclass
class TranslationResult:
    clauses: List[Clause] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def _term(arg: Arg, sk: Skolemizer, env: Dict[int, Term]) -> Term:
    if isinstance(arg, str):
        return NamedConst(arg)
    term = env.get(arg.id)
    if term is None:
        term = sk.map.get(arg.id)
    if term is None and arg.named is not None:
        # proper name first mentioned in a question
        return NamedConst(arg.named)
    if term is None:
        raise AceError(f"referent {referent_letter(arg.id)} is not in scope")
    return term


def _literal(atom: Atomic, sk: Skolemizer, env: Dict[int, Term],
             positive: bool = True) -> Literal:
    return Literal(atom.pred, tuple(_term(a, sk, env) for a in atom.args),
                   positive, atom.pos)


def _negated_literal(cond: Not, sk: Skolemizer, env: Dict[int, Term],
                     where: str) -> Literal:
    inner = cond.inner
    if inner.referents:
        raise UntranslatableNesting(
            f"negation {where} introduces a new object", cond.pos)
    atoms = [c for c in inner.conditions]
    if len(atoms) != 1 or not isinstance(atoms[0], Atomic):
        raise UntranslatableNesting(
            f"negation {where} must wrap a single condition", cond.pos)
    return _literal(atoms[0], sk, env, positive=False)


def _rule_parts(cond: IfThenC, sk: Skolemizer):
    """Antecedent literals and consequent atoms of one ifthen condition.

    Always assigns Skolem functions for the consequent referents, so calling
    it for already-translated rules keeps the global numbering aligned.
    """
    warnings: List[str] = []
    env: Dict[int, Term] = {}
    ant_vars: List[Term] = []
    for i, ref in enumerate(cond.antecedent.referents):
        var = Var(referent_letter(i))
        env[ref.id] = var
        ant_vars.append(var)

    ant_lits: List[Literal] = []
    for c in cond.antecedent.conditions:
        if isinstance(c, Atomic):
            ant_lits.append(_literal(c, sk, env))
        elif isinstance(c, Not):
            ant_lits.append(_negated_literal(c, sk, env, "in a rule condition"))
        else:
            raise UntranslatableNesting(
                "a rule condition may only contain facts and negations", c.pos)

    args = tuple(ant_vars)
    cons_atoms: List[Atomic] = []

    def walk_consequent(drs: Drs) -> None:
        for ref in drs.referents:
            sk.fn_for(ref, args)
        for c in drs.conditions:
            if isinstance(c, Atomic):
                cons_atoms.append(c)
            elif isinstance(c, Or):
                warnings.append(
                    "or in a rule consequence is strengthened to all "
                    "alternatives")
                for alt in c.alternatives:
                    walk_consequent(alt)
            else:
                raise UntranslatableNesting(
                    "a rule consequence may only contain facts and "
                    "disjunctions of facts", c.pos)

    walk_consequent(cond.consequent)
    cons_lits = [(_literal(a, sk, env), a.pos) for a in cons_atoms]
    return ant_lits, cons_lits, warnings


def _constraint_body(cond: Not, sk: Skolemizer) -> List[Literal]:
    env: Dict[int, Term] = {}

    def declare(drs: Drs) -> None:
        for ref in drs.referents:
            env[ref.id] = Var(referent_letter(len(env)))

    declare(cond.inner)
    body: List[Literal] = []
    for c in cond.inner.conditions:
        if isinstance(c, Atomic):
            body.append(_literal(c, sk, env))
        elif isinstance(c, Not):
            body.append(_negated_literal(c, sk, env, "inside a negation"))
        else:
            raise UntranslatableNesting(
                "a negated statement may only contain facts and negations",
                c.pos)
    return body


def translate(cleaned: Drs, sk: Skolemizer,
              from_sentence: int = 0) -> TranslationResult:
    """Clauses for the top-level conditions of a cleaned DRS.

    ``from_sentence`` suppresses clauses for conditions of earlier sentences
    (already assimilated) while still walking them, so Skolem numbering stays
    identical to a one-shot translation.
    """
    result = TranslationResult()
    for ref in cleaned.referents:
        sk.const_for(ref)
    for cond in cleaned.conditions:
        fresh = cond.pos is None or cond.pos.sentence >= from_sentence
        if isinstance(cond, QueryC):
            continue
        if isinstance(cond, Atomic):
            if fresh:
                result.clauses.append(Clause(_literal(cond, sk, {})))
        elif isinstance(cond, IfThenC):
            ant_lits, cons_lits, warnings = _rule_parts(cond, sk)
            if fresh:
                result.warnings.extend(warnings)
                if not cons_lits:
                    raise UntranslatableNesting(
                        "a rule with an empty consequence", cond.pos)
                for lit, _pos in cons_lits:
                    result.clauses.append(Clause(lit, tuple(ant_lits)))
        elif isinstance(cond, Not):
            if fresh:
                body = _constraint_body(cond, sk)
                result.clauses.append(Clause(None, tuple(body)))
                result.warnings.append(
                    "a negated statement is recorded as a constraint; "
                    "violations are reported when new facts arrive")
        elif isinstance(cond, Or):
            raise UntranslatableNesting(
                "a disjunction cannot be asserted at the top level", cond.pos)
        elif isinstance(cond, Pending):
            raise AceError("unresolved reference survived resolution")
        else:
            raise UntranslatableNesting("unsupported condition shape", cond.pos)
    return result


# ---------------------------------------------------------------------------
# questions


@dataclass
class QueryGoal:
    goals: List[Literal]
    wh_var: Optional[Var] = None            # None for yes/no questions
    wh_word: Optional[str] = None


def translate_query(query: QueryC, sk: Skolemizer) -> QueryGoal:
    body = query.body
    env: Dict[int, Term] = {}
    wh_var: Optional[Var] = None
    wh_word: Optional[str] = None
    for i, ref in enumerate(body.referents):
        if ref.is_wh:
            wh_var = Var("W" if wh_var is None else f"W{i}")
            env[ref.id] = wh_var
            wh_word = ref.wh_word
        else:
            env[ref.id] = Var(referent_letter(i))

    goals: List[Literal] = []
    for c in body.conditions:
        if isinstance(c, Atomic):
            goals.append(_literal(c, sk, env))
        elif isinstance(c, Not):
            goals.append(_negated_literal(c, sk, env, "in a question"))
        else:
            raise UntranslatableNesting(
                "a question may only contain facts and negations", c.pos)
    return QueryGoal(goals, wh_var, wh_word)


# ---------------------------------------------------------------------------
# answers


class ReferentIndex:
    """Maps ground terms back to ACE descriptions, from the KB's unary
    noun facts and named/2 facts.  First description per term wins."""

    def __init__(self, lexicon: Lexicon):
        self.lexicon = lexicon
        self._noun: Dict[Term, str] = {}
        self._name: Dict[Term, str] = {}
        self._displays: Dict[str, str] = {}
        for entry in lexicon.entries:
            if entry.cls == PROPER_NAME:
                self._displays[entry.canonical] = entry.display or entry.canonical

    def index_clause(self, clause: Clause) -> None:
        if clause.head is None or clause.body or not clause.head.positive:
            return
        lit = clause.head
        if lit.pred == "named" and len(lit.args) == 2:
            term, name = lit.args
            if isinstance(name, NamedConst):
                self._name.setdefault(term,
                                      self._displays.get(name.name, name.name))
            return
        if len(lit.args) != 1:
            return
        entry = (self.lexicon.get(COMMON_NOUN, lit.pred)
                 or self.lexicon.get(COMPOUND_NOUN, lit.pred))
        if entry is not None:
            self._noun.setdefault(lit.args[0], entry.form_for(SG))

    @classmethod
    def from_kb(cls, kb: KnowledgeBase, lexicon: Lexicon) -> "ReferentIndex":
        index = cls(lexicon)
        for clause in kb.clauses:
            index.index_clause(clause)
        return index

    def describe(self, term: Term) -> str:
        if term in self._name:
            return self._name[term]
        if isinstance(term, NamedConst):
            return self._displays.get(term.name, term.name.capitalize())
        if term in self._noun:
            return f"the {self._noun[term]}"
        return "an unknown object"


def verb_predicates(lexicon: Lexicon) -> set:
    out = set()
    for entry in lexicon.entries:
        if entry.cls in (TRANSITIVE_VERB, INTRANSITIVE_VERB):
            out.add(lexicon.representative(entry).canonical)
    return out


def generate_answer(goal: QueryGoal, results: Solutions,
                    index: ReferentIndex) -> str:
    suffix = " (search depth exceeded)" if results.incomplete else ""
    if goal.wh_var is None:
        if results:
            return "Yes."
        return "No." + suffix
    seen = []
    for subst in results:
        term = resolve_term(goal.wh_var, subst)
        if term not in seen:
            seen.append(term)
    if not seen:
        return "Nothing." + suffix
    text = " and ".join(index.describe(t) for t in seen)
    return text[0].upper() + text[1:] + "." + suffix
