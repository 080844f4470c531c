"""acekit: a controlled-English specification workbench.

Pipeline: tokenize -> parse -> discourse DRS -> resolve anaphora -> cleanup
-> clauses, with question answering and ordered event simulation on top.
"""

from .discourse import DiscourseState, build_sentence, cleanup, resolve
from .drs import Drs, dump as dump_drs, equal_up_to_renaming
from .errors import AceError
from .executor import ExecutionPlan, plan, register_interface, run, scripted_env
from .lexicon import Lexicon, load as load_lexicon, save as save_lexicon
from .logic import Clause, KnowledgeBase, Literal, solve
from .paraphrase import paraphrase_sentence, strip_annotations
from .parser import parse_sentence, parse_text, tokenize
from .session import Session, replay
from .translate import (ReferentIndex, Skolemizer, generate_answer, translate,
                        translate_query)

__version__ = "0.1.0"

__all__ = [
    "AceError", "Clause", "DiscourseState", "Drs", "ExecutionPlan",
    "KnowledgeBase", "Lexicon", "Literal", "ReferentIndex", "Session",
    "Skolemizer", "build_sentence", "cleanup", "dump_drs",
    "equal_up_to_renaming", "generate_answer", "load_lexicon",
    "paraphrase_sentence", "parse_sentence", "parse_text", "plan",
    "register_interface", "replay", "resolve", "run", "save_lexicon",
    "scripted_env", "solve", "strip_annotations", "tokenize", "translate",
    "translate_query",
]
