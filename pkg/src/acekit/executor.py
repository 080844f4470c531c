"""Ordered event simulation over a translated specification.

The cleaned DRS is planned into steps (verb conditions become events, other
conditions state-asserts) and rules (one per ifthen).  Execution walks steps
and rule activations in source-position order; after every item the active
rules are scanned and each newly provable antecedent binding fires the rule's
consequent steps, at most once per ground binding.  When the stream is done,
rules whose antecedents have no proof at all trigger scaffolding: the missing
unary predicate is requested from the environment and the answer asserted as
a named-constant fact, after which scanning resumes.  Event steps invoke
their interface action; the default renders a trace line, external hooks emit
a structured record instead.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set, Tuple

from .drs import Atomic, Drs, IfThenC, Not, Or, Pending, QueryC, referent_letter
from .errors import (AceError, CapExceeded, PromptRefused, SourcePos,
                     UntranslatableNesting)
from .lexicon import (COMMON_NOUN, COMPOUND_NOUN, INTRANSITIVE_VERB, SG,
                      TRANSITIVE_VERB, Lexicon)
from .logic import (DEFAULT_DEPTH_LIMIT, Clause, KnowledgeBase, Literal,
                    NamedConst, SkolemConst, Subst, Var, literal_vars,
                    resolve_literal, resolve_term, solve)
from .translate import ReferentIndex, Skolemizer, _literal, _rule_parts

FIRING_CAP = 10000

EVENT = "event"
STATE_ASSERT = "state-assert"

# interface bindings: (predicate, arity) -> "trace" or an external hook name
InterfaceBindings = Dict[Tuple[str, int], str]


@dataclass
class Step:
    kind: str                     # event | state-assert
    literal: Literal
    pos: Optional[SourcePos]


@dataclass
class Rule:
    index: int
    antecedent: List[Literal]
    vars: List[Var]               # antecedent variables, introduction order
    steps: List[Step]             # consequent steps, source order
    pos: Optional[SourcePos]


@dataclass
class ExecutionPlan:
    steps: List[Step] = field(default_factory=list)
    rules: List[Rule] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


@dataclass
class ExecutionResult:
    trace: List[str] = field(default_factory=list)
    events: List[Tuple[str, object]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    error: Optional[AceError] = None


def register_interface(bindings: InterfaceBindings, pred: str, arity: int,
                       action: str) -> InterfaceBindings:
    bindings[(pred, arity)] = action
    return bindings


def plan(cleaned: Drs, sk: Skolemizer, verbs: Set[str]) -> ExecutionPlan:
    out = ExecutionPlan()
    for ref in cleaned.referents:
        sk.const_for(ref)

    def step_for(lit: Literal, pos) -> Step:
        kind = EVENT if lit.pred in verbs else STATE_ASSERT
        return Step(kind, lit, pos)

    rule_index = 0
    for cond in cleaned.conditions:
        if isinstance(cond, QueryC):
            continue
        if isinstance(cond, Atomic):
            out.steps.append(step_for(_literal(cond, sk, {}), cond.pos))
        elif isinstance(cond, IfThenC):
            ant_lits, cons_lits, warnings = _rule_parts(cond, sk)
            out.warnings.extend(warnings)
            rule_vars = [Var(referent_letter(i))
                         for i in range(len(cond.antecedent.referents))]
            steps = [step_for(lit, pos) for lit, pos in cons_lits]
            out.rules.append(Rule(rule_index, ant_lits, rule_vars, steps,
                                  cond.pos))
            rule_index += 1
        elif isinstance(cond, Not):
            continue                      # constraints live in the KB, not in the run
        elif isinstance(cond, Or):
            raise UntranslatableNesting(
                "a disjunction cannot be executed at the top level", cond.pos)
        elif isinstance(cond, Pending):
            raise AceError("unresolved reference survived resolution")
    return out


def _pos_key(pos: Optional[SourcePos]):
    return (pos.sentence, pos.token) if pos is not None else (-1, -1)


def default_answer_handler(text: str, pred: str, lexicon: Lexicon):
    """Bare proper name -> named-constant fact for the requested predicate."""
    word = text.strip().rstrip(".")
    if not word or not word.replace(" ", "").isalpha() or " " in word:
        raise AceError(
            f"cannot interpret answer {text!r}; expected a proper name")
    return [Clause(Literal(pred, (NamedConst(word.lower()),)))], []


def run(exec_plan: ExecutionPlan, kb: KnowledgeBase, env: Callable[[str], Optional[str]],
        lexicon: Lexicon, interfaces: Optional[InterfaceBindings] = None,
        depth_limit: int = DEFAULT_DEPTH_LIMIT, raw: bool = False,
        emit: Optional[Callable[[str, object], None]] = None,
        answer_handler=None) -> ExecutionResult:
    interfaces = interfaces or {}
    if answer_handler is None:
        answer_handler = default_answer_handler
    result = ExecutionResult()
    index = ReferentIndex.from_kb(kb, lexicon)
    fired: Set[Tuple[int, Tuple]] = set()
    active: List[Rule] = []
    prompted: Set[str] = set()
    warned_constraints: Set[int] = set()
    warned_depth = False
    firings = 0

    def notify(kind: str, payload) -> None:
        result.events.append((kind, payload))
        if kind == "warning":
            result.warnings.append(payload)
        if emit is not None:
            emit(kind, payload)

    def assert_new(lit: Literal) -> bool:
        clause = Clause(lit)
        if kb.has_fact(lit):
            return False
        kb.assert_clause(clause)
        index.index_clause(clause)
        for i, constraint in enumerate(kb.constraints()):
            if i in warned_constraints:
                continue
            if solve(kb, list(constraint.body), depth_limit):
                warned_constraints.add(i)
                notify("warning", f"constraint violated: {constraint}")
        return True

    def describe(term) -> str:
        return str(term) if raw else index.describe(term)

    def verb_form(pred: str) -> str:
        entry = (lexicon.get(TRANSITIVE_VERB, pred)
                 or lexicon.get(INTRANSITIVE_VERB, pred))
        return entry.form_for(SG) if entry is not None else pred

    def do_step(step: Step, binding: Subst) -> None:
        lit = resolve_literal(step.literal, binding)
        if any(literal_vars(lit)):
            raise AceError(f"step {lit} is not ground")
        if step.kind == STATE_ASSERT:
            assert_new(lit)
            return
        action = interfaces.get((lit.pred, len(lit.args)), "trace")
        if action == "trace":
            parts = [describe(a) for a in lit.args]
            if len(parts) >= 2:
                line = f"event: {parts[0]} {verb_form(lit.pred)} {parts[1]}"
            elif parts:
                line = f"event: {parts[0]} {verb_form(lit.pred)}"
            else:
                line = f"event: {verb_form(lit.pred)}"
            result.trace.append(line)
            notify("trace", line)
        else:
            args = [a.n if isinstance(a, SkolemConst) else str(a)
                    for a in lit.args]
            notify("hook", {"hook": action, "args": args})
        assert_new(lit)

    def sweep() -> None:
        nonlocal firings, warned_depth
        progress = True
        while progress:
            progress = False
            for rule in active:
                solutions = solve(kb, rule.antecedent, depth_limit)
                if solutions.incomplete and not warned_depth:
                    warned_depth = True
                    notify("warning", "rule scan hit the search depth limit")
                for subst in solutions:
                    key = (rule.index,
                           tuple(resolve_term(v, subst) for v in rule.vars))
                    if key in fired:
                        continue
                    fired.add(key)
                    firings += 1
                    if firings > FIRING_CAP:
                        raise CapExceeded(
                            f"more than {FIRING_CAP} rule firings")
                    for step in rule.steps:
                        do_step(step, subst)
                    progress = True

    def scaffold() -> None:
        progress = True
        while progress:
            progress = False
            for rule in active:
                if not rule.vars:
                    continue
                if solve(kb, rule.antecedent, depth_limit):
                    continue
                for lit in rule.antecedent:
                    if not lit.positive or len(lit.args) != 1:
                        continue
                    if not isinstance(lit.args[0], Var):
                        continue
                    if lit.pred in prompted:
                        continue
                    if solve(kb, [lit], depth_limit):
                        continue
                    prompted.add(lit.pred)
                    entry = (lexicon.get(COMMON_NOUN, lit.pred)
                             or lexicon.get(COMPOUND_NOUN, lit.pred))
                    noun = (entry.form_for(SG) if entry is not None
                            else lit.pred.replace("_", " "))
                    prompt = f"Please enter a {noun}:"
                    notify("prompt", prompt)
                    answer = env(prompt)
                    if answer is None or not answer.strip():
                        raise PromptRefused(f"no answer for {prompt!r}")
                    clauses, warnings = answer_handler(answer, lit.pred,
                                                       lexicon)
                    for w in warnings:
                        notify("warning", w)
                    for clause in clauses:
                        if clause.body or clause.head is None:
                            kb.assert_clause(clause)
                        else:
                            assert_new(clause.head)
                    progress = True
                    sweep()

    stream: List[Tuple[Tuple[int, int], str, object]] = []
    for step in exec_plan.steps:
        stream.append((_pos_key(step.pos), "step", step))
    for rule in exec_plan.rules:
        stream.append((_pos_key(rule.pos), "rule", rule))
    stream.sort(key=lambda item: item[0])

    try:
        for w in exec_plan.warnings:
            notify("warning", w)
        for _key, kind, item in stream:
            if kind == "step":
                do_step(item, {})
            else:
                active.append(item)
            sweep()
        scaffold()
        notify("done", {"trace_lines": len(result.trace)})
    except (PromptRefused, CapExceeded, AceError) as exc:
        result.error = exc if isinstance(exc, AceError) else AceError(str(exc))
        notify("error", result.error.display())
    return result


def scripted_env(answers: List[str]) -> Callable[[str], Optional[str]]:
    """Answer source over a fixed list, consumed in prompt order."""
    remaining = list(answers)

    def env(_prompt: str) -> Optional[str]:
        if not remaining:
            return None
        return remaining.pop(0)

    return env
