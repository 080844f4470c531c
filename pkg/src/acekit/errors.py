"""Error taxonomy shared across the pipeline.

Every failure carries a machine-readable kind (used by the CLI diagnostic
format ``error: <kind>: <detail> at <sent>:<tok>`` and by the service's JSON
error bodies) and, where known, the sentence/token position it was detected
at.  Positions are stored 0-based and displayed 1-based.
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourcePos:
    sentence: int
    token: int

    def display(self) -> str:
        return f"{self.sentence + 1}:{self.token + 1}"


class AceError(Exception):
    """Base class; subclasses override ``kind``."""

    kind = "error"

    def __init__(self, detail: str, pos: Optional[SourcePos] = None):
        super().__init__(detail)
        self.detail = detail
        self.pos = pos

    def display(self) -> str:
        msg = f"error: {self.kind}: {self.detail}"
        if self.pos is not None:
            msg += f" at {self.pos.display()}"
        return msg


class LexiconError(AceError):
    kind = "lexicon-error"


class DuplicateFormConflict(LexiconError):
    kind = "duplicate-form-conflict"


class DanglingLink(LexiconError):
    kind = "dangling-link"


class LexiconParseError(LexiconError):
    # lexicon files are line oriented, so the position is a line number
    kind = "parse-error"

    def __init__(self, detail: str, line: Optional[int] = None):
        super().__init__(detail)
        self.line = line

    def display(self) -> str:
        msg = f"error: {self.kind}: {self.detail}"
        if self.line is not None:
            msg += f" at line {self.line}"
        return msg


class UnknownWordError(AceError):
    """Raised before parsing; carries every unknown word of the text."""

    kind = "unknown-word"

    def __init__(self, words, pos: Optional[SourcePos] = None):
        self.words = list(words)
        super().__init__(", ".join(self.words), pos)


class AceSyntaxError(AceError):
    kind = "syntax-error"


class AgreementError(AceError):
    kind = "agreement-error"


class PronounUnresolvable(AceError):
    kind = "pronoun-unresolvable"


class UnresolvedReference(AceError):
    kind = "unresolved-reference"


class UntranslatableNesting(AceError):
    kind = "untranslatable-nesting"


class SafetyViolation(AceError):
    kind = "safety-violation"


class NongroundNegation(AceError):
    kind = "nonground-negation"


class PromptRefused(AceError):
    kind = "prompt-refused"


class CapExceeded(AceError):
    kind = "cap-exceeded"


class SessionStateError(AceError):
    kind = "session-state"
