"""Application lexicon: content-word entries, builtin function words,
surface-form lookup, spelling check, and the line-oriented file format.

The lexicon is full-form: every surface a text may use is stored explicitly
(singular and plural for nouns, third-person singular and plural for verbs).
Compound nouns keep their internal space and are matched by the tokenizer via
longest match.  Lexicon values are immutable; every edit returns a new value,
so sessions can hand out snapshots without copying.
"""

import re
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from .errors import DanglingLink, DuplicateFormConflict, LexiconError, LexiconParseError

# word classes
COMMON_NOUN = "common-noun"
COMPOUND_NOUN = "compound-noun"
TRANSITIVE_VERB = "transitive-verb"
INTRANSITIVE_VERB = "intransitive-verb"
ADJECTIVE = "adjective"
PROPER_NAME = "proper-name"
LINK_CLASS = "__link__"            # carrier for syn/abbrev record lines

# grammatical number of a stored form
SG = "sg"
PL = "pl"
NA = "n/a"

GENDERS = ("masc", "fem", "common", "neut")

# Builtin function words.  These are closed classes: content entries may not
# shadow any of them.
DETERMINERS = ("a", "an", "the", "every", "no")
PRONOUNS = {"he": ("masc", SG), "she": ("fem", SG), "it": ("neut", SG), "they": (None, PL)}
CONJUNCTIONS = ("and", "or", "if", "then", "either", "neither", "nor")
RELATIVE_PRONOUNS = ("who", "which", "that")
AUXILIARIES = ("does", "do", "is", "are")
WH_WORDS = ("who", "what", "which")

BUILTIN_WORDS = frozenset(
    DETERMINERS
    + tuple(PRONOUNS)
    + CONJUNCTIONS
    + RELATIVE_PRONOUNS
    + AUXILIARIES
    + ("not",)
    + WH_WORDS
)


def canonical_symbol(surface: str) -> str:
    """Lowercase, spaces to underscores: 'personal code' -> 'personal_code'."""
    return re.sub(r"\s+", "_", surface.strip().lower())


@dataclass(frozen=True)
class LexEntry:
    cls: str
    canonical: str
    # (surface, number) pairs; surfaces are stored lowercased, compounds
    # single-spaced
    forms: Tuple[Tuple[str, str], ...]
    gender: Optional[str] = None
    countability: Optional[str] = None
    display: Optional[str] = None          # proper names keep a display capitalization
    link: Optional[Tuple[str, str]] = None  # ("synonym"|"abbreviation", target canonical)

    def form_for(self, number: str) -> Optional[str]:
        for surface, num in self.forms:
            if num == number:
                return surface
        return None


def _norm_surface(surface: str) -> str:
    return re.sub(r"\s+", " ", surface.strip().lower())


def noun_entry(sg: str, pl: Optional[str], gender: str, countability: str = "count") -> LexEntry:
    sg = _norm_surface(sg)
    cls = COMPOUND_NOUN if " " in sg else COMMON_NOUN
    forms = [(sg, SG)]
    if pl:
        forms.append((_norm_surface(pl), PL))
    return LexEntry(cls, canonical_symbol(sg), tuple(forms), gender=gender, countability=countability)


def tverb_entry(base: str, third_sg: str) -> LexEntry:
    base = _norm_surface(base)
    return LexEntry(TRANSITIVE_VERB, canonical_symbol(base),
                    ((_norm_surface(third_sg), SG), (base, PL)))


def iverb_entry(base: str, third_sg: str) -> LexEntry:
    base = _norm_surface(base)
    return LexEntry(INTRANSITIVE_VERB, canonical_symbol(base),
                    ((_norm_surface(third_sg), SG), (base, PL)))


def adj_entry(word: str) -> LexEntry:
    word = _norm_surface(word)
    return LexEntry(ADJECTIVE, canonical_symbol(word), ((word, NA),))


def pname_entry(canonical: str, display: str, gender: str) -> LexEntry:
    canonical = canonical_symbol(canonical)
    return LexEntry(PROPER_NAME, canonical, ((canonical, NA),), gender=gender, display=display)


def _validate(entry: LexEntry) -> None:
    if entry.cls not in (COMMON_NOUN, COMPOUND_NOUN, TRANSITIVE_VERB,
                         INTRANSITIVE_VERB, ADJECTIVE, PROPER_NAME):
        raise LexiconError(f"unknown word class {entry.cls!r}")
    if not entry.forms:
        raise LexiconError(f"entry {entry.canonical!r} has no forms")
    if entry.gender is not None and entry.gender not in GENDERS:
        raise LexiconError(f"unknown gender {entry.gender!r} for {entry.canonical!r}")
    if entry.cls in (COMMON_NOUN, COMPOUND_NOUN):
        if entry.countability == "count" and entry.form_for(PL) is None:
            raise LexiconError(f"count noun {entry.canonical!r} needs a plural form")
        if entry.gender is None:
            raise LexiconError(f"noun {entry.canonical!r} needs a gender")
    for surface, _num in entry.forms:
        for word in surface.split(" "):
            if word in BUILTIN_WORDS:
                raise LexiconError(
                    f"{word!r} is a builtin function word and cannot be shadowed")


class Lexicon:
    """Immutable set of entries with surface and canonical indexes."""

    def __init__(self, entries: Tuple[LexEntry, ...] = ()):
        self.entries = tuple(entries)
        self._by_key: Dict[Tuple[str, str], LexEntry] = {}
        self._by_form: Dict[str, List[Tuple[LexEntry, str]]] = {}
        self._max_compound = 1
        for e in self.entries:
            self._by_key[(e.cls, e.canonical)] = e
            for surface, num in e.forms:
                self._by_form.setdefault(surface, []).append((e, num))
                self._max_compound = max(self._max_compound, surface.count(" ") + 1)

    def lookup(self, surface: str) -> List[Tuple[LexEntry, str]]:
        """All (entry, number) readings of a surface, case-insensitively."""
        return list(self._by_form.get(_norm_surface(surface), ()))

    def get(self, cls: str, canonical: str) -> Optional[LexEntry]:
        return self._by_key.get((cls, canonical))

    def find_canonical(self, canonical: str) -> List[LexEntry]:
        return [e for e in self.entries if e.canonical == canonical]

    @property
    def max_compound_words(self) -> int:
        return self._max_compound

    def representative(self, entry: LexEntry) -> LexEntry:
        """Follow synonym/abbreviation links to the canonical representative."""
        seen = set()
        while entry.link is not None:
            if entry.canonical in seen:
                raise LexiconError(f"link cycle through {entry.canonical!r}")
            seen.add(entry.canonical)
            target = self.get(entry.cls, entry.link[1])
            if target is None:
                raise DanglingLink(
                    f"{entry.canonical!r} links to missing {entry.link[1]!r}")
            entry = target
        return entry

    def add_entry(self, entry: LexEntry) -> "Lexicon":
        _validate(entry)
        for surface, _num in entry.forms:
            for existing, _n in self._by_form.get(surface, ()):
                if existing.cls == entry.cls and existing.canonical != entry.canonical:
                    raise DuplicateFormConflict(
                        f"form {surface!r} already maps to "
                        f"{existing.cls} {existing.canonical!r}")
        if entry.link is not None:
            kind, target = entry.link
            if kind not in ("synonym", "abbreviation"):
                raise LexiconError(f"unknown link kind {kind!r}")
            if self.get(entry.cls, target) is None and target != entry.canonical:
                raise DanglingLink(
                    f"{entry.canonical!r} links to missing {target!r}")
        # replace any existing entry with the same (class, canonical)
        kept = [e for e in self.entries if (e.cls, e.canonical) != (entry.cls, entry.canonical)]
        lex = Lexicon(tuple(kept) + (entry,))
        if entry.link is not None:
            lex.representative(entry)  # raises on cycles
        return lex

    def __eq__(self, other):
        return isinstance(other, Lexicon) and set(self.entries) == set(other.entries)

    def __repr__(self):
        return f"Lexicon({len(self.entries)} entries)"


def is_known_word(lexicon: Lexicon, surface: str) -> bool:
    return surface.lower() in BUILTIN_WORDS or bool(lexicon.lookup(surface))


def join_compounds(lexicon: Lexicon, words: List[str]) -> List[str]:
    """Greedy longest-match joining of compound-noun surfaces.

    >>> lex = Lexicon().add_entry(noun_entry('personal code', 'personal codes', 'neut'))
    >>> join_compounds(lex, ['a', 'personal', 'code'])
    ['a', 'personal code']
    """
    out = []
    i = 0
    while i < len(words):
        match = None
        limit = min(lexicon.max_compound_words, len(words) - i)
        for width in range(limit, 1, -1):
            candidate = " ".join(w.lower() for w in words[i:i + width])
            if any(e.cls == COMPOUND_NOUN for e, _n in lexicon.lookup(candidate)):
                match = candidate
                i += width
                break
        if match is None:
            out.append(words[i])
            i += 1
        else:
            out.append(match)
    return out


def spell_check(lexicon: Lexicon, text: str) -> List[str]:
    """Unknown alphabetic tokens of ``text``, deduplicated, in order.

    Compounds are joined first, so the words of a known compound noun do not
    count as unknown even when they have no entry of their own.
    """
    words = re.findall(r"[A-Za-z]+", text)
    unknown: List[str] = []
    seen = set()
    for token in join_compounds(lexicon, words):
        if is_known_word(lexicon, token):
            continue
        key = token.lower()
        if key not in seen:
            seen.add(key)
            unknown.append(token)
    return unknown


# ---------------------------------------------------------------------------
# file format

_RECORD_RE = re.compile(r"^\s*([a-z]+)\s*\((.*)\)\s*\.\s*$")


def _strip_comment(line: str) -> str:
    out = []
    in_quote = False
    for ch in line:
        if ch == '"':
            in_quote = not in_quote
        if ch == "%" and not in_quote:
            break
        out.append(ch)
    return "".join(out)


def _split_args(body: str, line_no: int) -> List[str]:
    args: List[str] = []
    current: List[str] = []
    in_quote = False
    for ch in body:
        if ch == '"':
            in_quote = not in_quote
            current.append(ch)
        elif ch == "," and not in_quote:
            args.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if in_quote:
        raise LexiconParseError("unterminated quote", line_no)
    last = "".join(current).strip()
    if last or args:
        args.append(last)
    return args


def _unquote(arg: str) -> str:
    if len(arg) >= 2 and arg.startswith('"') and arg.endswith('"'):
        return arg[1:-1]
    return arg


def parse_record(line: str, line_no: int = 0) -> Optional[LexEntry]:
    """One lexicon record line -> LexEntry (links become stub entries)."""
    m = _RECORD_RE.match(line)
    if m is None:
        raise LexiconParseError(f"unrecognized record {line.strip()!r}", line_no)
    name, body = m.group(1), m.group(2)
    args = _split_args(body, line_no)

    def need(n):
        if len(args) != n:
            raise LexiconParseError(f"{name} record needs {n} arguments", line_no)

    if name in ("noun", "cnoun"):
        need(4)
        sg, pl, gender, count = (_unquote(a) for a in args)
        if gender not in GENDERS:
            raise LexiconParseError(f"unknown gender {gender!r}", line_no)
        if count not in ("count", "mass"):
            raise LexiconParseError(f"unknown countability {count!r}", line_no)
        return noun_entry(sg, None if pl == "-" else pl, gender, count)
    if name == "tverb":
        need(2)
        return tverb_entry(args[0], args[1])
    if name == "iverb":
        need(2)
        return iverb_entry(args[0], args[1])
    if name == "adj":
        need(1)
        return adj_entry(args[0])
    if name == "pname":
        need(3)
        canonical, display, gender = args[0], _unquote(args[1]), args[2]
        if gender not in GENDERS:
            raise LexiconParseError(f"unknown gender {gender!r}", line_no)
        return pname_entry(canonical, display, gender)
    if name in ("syn", "abbrev"):
        need(2)
        kind = "synonym" if name == "syn" else "abbreviation"
        # marker entry resolved by load()/Session.lexicon_edit
        return LexEntry(LINK_CLASS, canonical_symbol(args[0]), ((kind, args[1]),))
    raise LexiconParseError(f"unknown record type {name!r}", line_no)


def apply_link(lexicon: Lexicon, kind: str, source: str, target: str) -> Lexicon:
    """Attach a synonym/abbreviation link, creating a proper-name stub for
    abbreviations whose source has no entry yet."""
    target = canonical_symbol(target)
    source = canonical_symbol(source)
    targets = lexicon.find_canonical(target)
    if not targets:
        raise DanglingLink(f"link target {target!r} has no entry")
    sources = lexicon.find_canonical(source)
    if sources:
        entry = sources[0]
        if not any(t.cls == entry.cls for t in targets):
            raise DanglingLink(
                f"{source!r} ({entry.cls}) has no link target of its own class")
        return lexicon.add_entry(replace(entry, link=(kind, target)))
    # unseen source: only proper names may be introduced by a bare link record
    pn_target = next((t for t in targets if t.cls == PROPER_NAME), None)
    if pn_target is None:
        raise DanglingLink(
            f"{source!r} has no entry; bare {kind} records may only name proper names")
    stub = replace(pname_entry(source, source, pn_target.gender or "neut"),
                   link=(kind, target))
    return lexicon.add_entry(stub)


def load(text: str) -> Lexicon:
    """Parse the save format back into a Lexicon; errors carry line numbers."""
    lexicon = Lexicon()
    links: List[Tuple[int, str, str, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        entry = parse_record(line, line_no)
        if entry.cls == "__link__":
            kind, target = entry.forms[0]
            links.append((line_no, kind, entry.canonical, target))
            continue
        try:
            lexicon = lexicon.add_entry(entry)
        except LexiconError as err:
            if isinstance(err, LexiconParseError):
                raise
            raise LexiconParseError(err.detail, line_no) from err
    for line_no, kind, source, target in links:
        try:
            lexicon = apply_link(lexicon, kind, source, target)
        except LexiconError as err:
            raise LexiconParseError(err.detail, line_no) from err
    return lexicon


def load_file(path) -> Lexicon:
    with open(path, "r", encoding="utf-8") as fh:
        return load(fh.read())


def _record_lines(entry: LexEntry) -> List[str]:
    lines = []
    if entry.cls in (COMMON_NOUN, COMPOUND_NOUN):
        sg = entry.form_for(SG)
        pl = entry.form_for(PL) or "-"
        if entry.cls == COMPOUND_NOUN:
            head = f'cnoun("{sg}", "{pl}", {entry.gender}, {entry.countability or "count"}).'
        else:
            head = f"noun({sg}, {pl}, {entry.gender}, {entry.countability or 'count'})."
        lines.append(head)
    elif entry.cls == TRANSITIVE_VERB:
        lines.append(f"tverb({entry.form_for(PL)}, {entry.form_for(SG)}).")
    elif entry.cls == INTRANSITIVE_VERB:
        lines.append(f"iverb({entry.form_for(PL)}, {entry.form_for(SG)}).")
    elif entry.cls == ADJECTIVE:
        lines.append(f"adj({entry.canonical}).")
    elif entry.cls == PROPER_NAME:
        lines.append(f'pname({entry.canonical}, "{entry.display or entry.canonical}", {entry.gender}).')
    if entry.link is not None:
        kind, target = entry.link
        name = "syn" if kind == "synonym" else "abbrev"
        lines.append(f"{name}({entry.canonical}, {target}).")
    return lines


def record_line(entry: LexEntry) -> str:
    """The record line for one entry (links excluded)."""
    return _record_lines(entry)[0]


def save(lexicon: Lexicon) -> str:
    """Serialize; load(save(L)) == L up to entry order."""
    lines = ["% acekit lexicon"]
    link_lines: List[str] = []
    for entry in lexicon.entries:
        recs = _record_lines(entry)
        lines.append(recs[0])
        link_lines.extend(recs[1:])
    lines.extend(link_lines)
    return "\n".join(lines) + "\n"


def save_file(lexicon: Lexicon, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(save(lexicon))
