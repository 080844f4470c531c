"""Discourse representation structures.

A Drs holds an ordered list of referents and an ordered list of conditions.
Conditions are atomic predications over referents and symbols, or complex
(ifthen / not / or over sub-DRSs, plus the transient query condition).
Bookkeeping conditions -- the/1 around a noun predication, eq (written E=C),
synonym/2 and gender/2 -- exist only between resolution and cleanup.

The dump format is bit-exact and shared by the CLI and the service:

    drs([A, B], [customer(A), card(B), enter(A, B)])

Referents print as capital letters in introduction order (A..Z, then A1...).
"""

import copy
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from .errors import SourcePos


def referent_letter(index: int) -> str:
    base = chr(ord("A") + index % 26)
    round_ = index // 26
    return base if round_ == 0 else f"{base}{round_}"


@dataclass
class Referent:
    id: int
    gender: Optional[str] = None
    number: Optional[str] = None
    noun: Optional[str] = None      # canonical noun predicate, if introduced by one
    named: Optional[str] = None     # canonical proper name
    sentence: int = 0
    surface: str = ""               # NP as introduced, for paraphrase annotations
    is_wh: bool = False
    wh_word: Optional[str] = None

    def __hash__(self):
        return hash(self.id)

    def __eq__(self, other):
        return isinstance(other, Referent) and other.id == self.id


Arg = Union[Referent, str]


class Condition:
    pos: Optional[SourcePos] = None


@dataclass
class Atomic(Condition):
    pred: str
    args: Tuple[Arg, ...]
    pos: Optional[SourcePos] = None


@dataclass
class The(Condition):
    """Definite-NP bookkeeping wrapping the noun predication."""
    inner: Atomic
    pos: Optional[SourcePos] = None


@dataclass
class Eq(Condition):
    left: Referent
    right: Referent
    pos: Optional[SourcePos] = None


@dataclass
class Synonym(Condition):
    left: Atomic
    right: Atomic
    pos: Optional[SourcePos] = None


@dataclass
class Not(Condition):
    inner: "Drs" = None
    pos: Optional[SourcePos] = None


@dataclass
class Or(Condition):
    alternatives: List["Drs"] = field(default_factory=list)
    pos: Optional[SourcePos] = None


@dataclass
class IfThenC(Condition):
    antecedent: "Drs" = None
    consequent: "Drs" = None
    pos: Optional[SourcePos] = None


@dataclass
class QueryC(Condition):
    """Transient question condition; never part of asserted discourse."""
    body: "Drs" = None
    wh: List[Referent] = field(default_factory=list)
    pos: Optional[SourcePos] = None


@dataclass
class Pending(Condition):
    """Placeholder for an unresolved anaphor; replaced by resolution."""
    kind: str = "definite"          # definite | pronoun | name
    referent: Referent = None
    noun: Optional[str] = None      # definite: canonical noun predicate
    target: Optional[str] = None    # name: canonical of the link target
    own: Optional[str] = None       # name: the anaphor's own canonical
    gender: Optional[str] = None    # pronoun constraint (None for they)
    np = None                       # originating parse node, for paraphrase
    pos: Optional[SourcePos] = None


class Drs:
    def __init__(self, parent: Optional["Drs"] = None,
                 also_access: Optional["Drs"] = None):
        self.referents: List[Referent] = []
        self.conditions: List[Condition] = []
        self.parent = parent
        # the antecedent DRS, for a consequent that may also see it
        self.also_access = also_access

    def new_child(self, also_access: Optional["Drs"] = None) -> "Drs":
        return Drs(parent=self, also_access=also_access)

    def add(self, condition: Condition) -> None:
        self.conditions.append(condition)

    def accessible(self) -> List["Drs"]:
        """This DRS and every superordinated one, nearest first.

        A consequent DRS also reaches its antecedent via ``also_access``.
        """
        out: List[Drs] = []
        queue = [self]
        while queue:
            node = queue.pop(0)
            if node is None or any(node is seen for seen in out):
                continue
            out.append(node)
            if node.also_access is not None:
                queue.append(node.also_access)
            if node.parent is not None:
                queue.append(node.parent)
        return out

    def sub_drss(self):
        for cond in self.conditions:
            if isinstance(cond, Not):
                yield cond.inner
            elif isinstance(cond, Or):
                yield from cond.alternatives
            elif isinstance(cond, IfThenC):
                yield cond.antecedent
                yield cond.consequent
            elif isinstance(cond, QueryC):
                yield cond.body

    def walk(self):
        """Depth-first iteration over (drs, condition) pairs, in order."""
        for cond in self.conditions:
            yield self, cond
        for sub in self.sub_drss():
            yield from sub.walk()

    def all_referents(self) -> List[Referent]:
        out = list(self.referents)
        for sub in self.sub_drss():
            out.extend(sub.all_referents())
        return out

    def clone(self) -> "Drs":
        return copy.deepcopy(self)


# ---------------------------------------------------------------------------
# dump


def _arg_str(arg: Arg) -> str:
    if isinstance(arg, Referent):
        return referent_letter(arg.id)
    return str(arg)


def condition_str(cond: Condition) -> str:
    if isinstance(cond, Atomic):
        return f"{cond.pred}({', '.join(_arg_str(a) for a in cond.args)})"
    if isinstance(cond, The):
        return f"the({condition_str(cond.inner)})"
    if isinstance(cond, Eq):
        return f"{_arg_str(cond.left)}={_arg_str(cond.right)}"
    if isinstance(cond, Synonym):
        return f"synonym({condition_str(cond.left)}, {condition_str(cond.right)})"
    if isinstance(cond, Not):
        return f"not({dump(cond.inner)})"
    if isinstance(cond, Or):
        return f"or({', '.join(dump(d) for d in cond.alternatives)})"
    if isinstance(cond, IfThenC):
        return f"ifthen({dump(cond.antecedent)}, {dump(cond.consequent)})"
    if isinstance(cond, QueryC):
        wh = ", ".join(referent_letter(r.id) for r in cond.wh)
        return f"query({dump(cond.body)}, [{wh}])"
    if isinstance(cond, Pending):
        return f"pending({cond.kind}, {referent_letter(cond.referent.id)})"
    raise TypeError(f"cannot dump {cond!r}")


def dump(drs: Drs) -> str:
    refs = ", ".join(referent_letter(r.id) for r in drs.referents)
    conds = ", ".join(condition_str(c) for c in drs.conditions)
    return f"drs([{refs}], [{conds}])"


# ---------------------------------------------------------------------------
# structural comparison up to referent renaming


def _canonical(drs: Drs, mapping, counter) -> tuple:
    refs = []
    for r in drs.referents:
        if r.id not in mapping:
            mapping[r.id] = counter[0]
            counter[0] += 1
        refs.append(mapping[r.id])

    def arg_key(arg):
        if isinstance(arg, Referent):
            if arg.id not in mapping:
                mapping[arg.id] = counter[0]
                counter[0] += 1
            return ("ref", mapping[arg.id])
        return ("sym", arg)

    def cond_key(cond):
        if isinstance(cond, Atomic):
            return ("atom", cond.pred, tuple(arg_key(a) for a in cond.args))
        if isinstance(cond, The):
            return ("the", cond_key(cond.inner))
        if isinstance(cond, Eq):
            return ("eq", arg_key(cond.left), arg_key(cond.right))
        if isinstance(cond, Synonym):
            return ("synonym", cond_key(cond.left), cond_key(cond.right))
        if isinstance(cond, Not):
            return ("not", _canonical(cond.inner, mapping, counter))
        if isinstance(cond, Or):
            return ("or", tuple(_canonical(d, mapping, counter) for d in cond.alternatives))
        if isinstance(cond, IfThenC):
            return ("ifthen", _canonical(cond.antecedent, mapping, counter),
                    _canonical(cond.consequent, mapping, counter))
        if isinstance(cond, QueryC):
            return ("query", _canonical(cond.body, mapping, counter),
                    tuple(arg_key(r) for r in cond.wh))
        raise TypeError(f"cannot compare {cond!r}")

    return (tuple(refs), tuple(cond_key(c) for c in drs.conditions))


def canonical_form(drs: Drs) -> tuple:
    """Rename referents by first occurrence; equal forms mean equal DRSs."""
    return _canonical(drs, {}, [0])


def equal_up_to_renaming(a: Drs, b: Drs) -> bool:
    return canonical_form(a) == canonical_form(b)
