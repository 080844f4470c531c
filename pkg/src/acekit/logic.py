"""Executable knowledge base: terms, clauses, and an SLD prover.

Clauses are Horn clauses whose body literals may be negated; negation is
negation as failure over a fresh subproof with the same depth limit.  Goals
are selected left to right, clauses tried in assertion order, and unification
runs with the occurs check on.  Hitting the depth limit abandons that branch
and marks the answer set incomplete instead of failing silently.
"""

import itertools
import sys
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from .errors import NongroundNegation, SafetyViolation, SourcePos

DEFAULT_DEPTH_LIMIT = 1000


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class SkolemConst:
    """Top-level discourse referent, numbered in introduction order."""
    n: int

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class NamedConst:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SkolemFn:
    """Skolem function for a rule-consequent referent."""
    name: str
    args: Tuple["Term", ...] = ()

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


Term = Union[SkolemConst, NamedConst, SkolemFn, Var]


@dataclass(frozen=True)
class Literal:
    pred: str
    args: Tuple[Term, ...] = ()
    positive: bool = True
    pos: Optional[SourcePos] = field(default=None, compare=False)

    def __str__(self):
        inner = self.pred
        if self.args:
            inner = f"{self.pred}({', '.join(str(a) for a in self.args)})"
        return inner if self.positive else f"neg({inner})"

    def negate(self) -> "Literal":
        return Literal(self.pred, self.args, not self.positive, self.pos)


@dataclass(frozen=True)
class Clause:
    head: Optional[Literal]         # None encodes an integrity constraint
    body: Tuple[Literal, ...] = ()

    def __str__(self):
        head = "false" if self.head is None else str(self.head)
        if not self.body:
            return head
        return f"{head}:-{', '.join(str(b) for b in self.body)}"


def term_vars(term: Term) -> Iterator[Var]:
    if isinstance(term, Var):
        yield term
    elif isinstance(term, SkolemFn):
        for a in term.args:
            yield from term_vars(a)


def literal_vars(lit: Literal) -> Iterator[Var]:
    for a in lit.args:
        yield from term_vars(a)


def is_ground(item) -> bool:
    """True when a term or literal contains no variables."""
    vars_of = literal_vars if isinstance(item, Literal) else term_vars
    return next(vars_of(item), None) is None


# ---------------------------------------------------------------------------
# substitutions and unification

Subst = Dict[Var, Term]


def walk(term: Term, subst: Subst) -> Term:
    while isinstance(term, Var) and term in subst:
        term = subst[term]
    return term


def resolve_term(term: Term, subst: Subst) -> Term:
    term = walk(term, subst)
    if isinstance(term, SkolemFn) and term.args:
        return SkolemFn(term.name, tuple(resolve_term(a, subst) for a in term.args))
    return term


def resolve_literal(lit: Literal, subst: Subst) -> Literal:
    return Literal(lit.pred, tuple(resolve_term(a, subst) for a in lit.args),
                   lit.positive, lit.pos)


def occurs(var: Var, term: Term, subst: Subst) -> bool:
    term = walk(term, subst)
    if term == var:
        return True
    if isinstance(term, SkolemFn):
        return any(occurs(var, a, subst) for a in term.args)
    return False


def unify_terms(a: Term, b: Term, subst: Subst) -> Optional[Subst]:
    a, b = walk(a, subst), walk(b, subst)
    if a == b:
        return subst
    if isinstance(a, Var):
        if occurs(a, b, subst):
            return None
        out = dict(subst)
        out[a] = b
        return out
    if isinstance(b, Var):
        return unify_terms(b, a, subst)
    if isinstance(a, SkolemFn) and isinstance(b, SkolemFn):
        if a.name != b.name or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            subst = unify_terms(x, y, subst)
            if subst is None:
                return None
        return subst
    return None


def unify_literals(a: Literal, b: Literal, subst: Subst) -> Optional[Subst]:
    if a.pred != b.pred or len(a.args) != len(b.args) or a.positive != b.positive:
        return None
    for x, y in zip(a.args, b.args):
        subst = unify_terms(x, y, subst)
        if subst is None:
            return None
    return subst


# ---------------------------------------------------------------------------
# knowledge base


class KnowledgeBase:
    def __init__(self):
        self.clauses: List[Clause] = []
        self._index: Dict[Tuple[str, int], List[Clause]] = {}

    def __len__(self):
        return len(self.clauses)

    def assert_clause(self, clause: Clause) -> None:
        if clause.head is not None:
            head_vars = set(literal_vars(clause.head))
            pos_vars = set()
            for lit in clause.body:
                if lit.positive:
                    pos_vars.update(literal_vars(lit))
            unsafe = head_vars - pos_vars
            for lit in clause.body:
                if not lit.positive:
                    unsafe |= set(literal_vars(lit)) - pos_vars
            if unsafe:
                names = ", ".join(sorted(v.name for v in unsafe))
                raise SafetyViolation(
                    f"variable {names} appears only in the head or a negated "
                    f"literal")
        self.clauses.append(clause)
        if clause.head is not None:
            key = (clause.head.pred, len(clause.head.args))
            self._index.setdefault(key, []).append(clause)

    def clauses_for(self, lit: Literal) -> List[Clause]:
        return self._index.get((lit.pred, len(lit.args)), [])

    def constraints(self) -> List[Clause]:
        return [c for c in self.clauses if c.head is None]

    def has_fact(self, lit: Literal) -> bool:
        for clause in self.clauses_for(lit):
            if not clause.body and clause.head == lit:
                return True
        return False

    def dump(self) -> str:
        lines = []
        for clause in self.clauses:
            if clause.head is None:
                body = ", ".join(str(b) for b in clause.body)
                lines.append(f"fact((false:-{body})).")
            elif clause.body:
                lines.append(f"fact(({clause})).")
            else:
                lines.append(f"fact({clause.head}).")
        return "\n".join(lines)

    def clone(self) -> "KnowledgeBase":
        out = KnowledgeBase()
        out.clauses = list(self.clauses)
        out._index = {k: list(v) for k, v in self._index.items()}
        return out


# ---------------------------------------------------------------------------
# SLD resolution with negation as failure


class Solutions:
    """Answer substitutions for a goal list, plus an incompleteness flag.

    ``incomplete`` is True when some branch hit the depth limit, meaning the
    absence of further answers is not conclusive.
    """

    def __init__(self, bindings: List[Subst], incomplete: bool):
        self.bindings = bindings
        self.incomplete = incomplete

    def __iter__(self):
        return iter(self.bindings)

    def __bool__(self):
        return bool(self.bindings)

    def __len__(self):
        return len(self.bindings)


class _Search:
    def __init__(self, kb: KnowledgeBase, depth_limit: int):
        self.kb = kb
        self.depth_limit = depth_limit
        self.incomplete = False
        self._rename = itertools.count()

    def rename_clause(self, clause: Clause) -> Clause:
        mapping: Dict[Var, Var] = {}
        suffix = next(self._rename)

        def ren_term(t: Term) -> Term:
            if isinstance(t, Var):
                if t not in mapping:
                    mapping[t] = Var(f"{t.name}#{suffix}")
                return mapping[t]
            if isinstance(t, SkolemFn) and t.args:
                return SkolemFn(t.name, tuple(ren_term(a) for a in t.args))
            return t

        def ren_lit(l: Literal) -> Literal:
            return Literal(l.pred, tuple(ren_term(a) for a in l.args),
                           l.positive, l.pos)

        head = ren_lit(clause.head) if clause.head is not None else None
        return Clause(head, tuple(ren_lit(b) for b in clause.body))

    def prove(self, goals: List[Literal], subst: Subst,
              depth: int) -> Iterator[Subst]:
        if not goals:
            yield subst
            return
        if depth >= self.depth_limit:
            self.incomplete = True
            return
        goal, rest = goals[0], goals[1:]

        if not goal.positive:
            grounded = resolve_literal(goal, subst)
            if any(literal_vars(grounded)):
                raise NongroundNegation(
                    f"negated goal {grounded} is not ground when selected",
                    goal.pos)
            sub = _Search(self.kb, self.depth_limit)
            answers = sub.prove([grounded.negate()], {}, depth + 1)
            found = next(answers, None)
            if sub.incomplete:
                # a truncated subsearch taints the negation either way: a
                # missing proof may exist, a found proof may rest on one
                self.incomplete = True
            if found is None:
                yield from self.prove(rest, subst, depth + 1)
            return

        for clause in self.kb.clauses_for(goal):
            clause = self.rename_clause(clause)
            unified = unify_literals(goal, clause.head, subst)
            if unified is None:
                continue
            yield from self.prove(list(clause.body) + rest, unified, depth + 1)


def solve(kb: KnowledgeBase, goals: Iterable[Literal],
          depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Solutions:
    goals = list(goals)
    # resolution steps nest generator frames; keep headroom so the depth
    # limit, not the interpreter, ends runaway searches
    needed = depth_limit * 6 + 1000
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)
    search = _Search(kb, depth_limit)
    bindings = [dict(s) for s in search.prove(goals, {}, 0)]
    return Solutions(bindings, search.incomplete)


def check_constraints(kb: KnowledgeBase,
                      depth_limit: int = DEFAULT_DEPTH_LIMIT) -> List[Clause]:
    """Integrity constraints whose bodies are currently provable."""
    violated = []
    for constraint in kb.constraints():
        if solve(kb, list(constraint.body), depth_limit):
            violated.append(constraint)
    return violated
