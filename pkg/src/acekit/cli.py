"""acectl: batch pipeline commands, a REPL, and the HTTP service runner.

Batch commands auto-accept the document; the stage-then-accept protocol is
for the REPL and the service.  All errors print to stderr in the fixed
``error: <kind>: <detail> at <sentence>:<token>`` shape and exit 1.
"""

import argparse
import sys
from typing import List, Optional

from . import lexicon as lx
from .errors import AceError
from .logic import DEFAULT_DEPTH_LIMIT
from .parser import dump_tree
from .session import Session


def _merge_lexicons(paths: List[str]) -> lx.Lexicon:
    merged = lx.Lexicon()
    linked = []
    for path in paths:
        loaded = lx.load_file(path)
        for entry in loaded.entries:
            if entry.link is None:
                merged = merged.add_entry(entry)
            else:
                linked.append(entry)       # links need their targets first
    for entry in linked:
        merged = merged.add_entry(entry)
    return merged


def _session(args) -> Session:
    lexicon = _merge_lexicons(args.lexicon or [])
    return Session(lexicon, depth_limit=args.depth_limit)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _submit_or_die(session: Session, text: str) -> None:
    outcome = session.submit(text)
    for warning in outcome.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if outcome.status != "ok":
        raise outcome.error


def cmd_parse(args) -> int:
    session = _session(args)
    outcome = session.submit(_read(args.file))
    for warning in outcome.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if args.tree:
        for tree in session.staged_trees:
            print(dump_tree(tree))
    else:
        for paraphrase in outcome.paraphrases:
            print(paraphrase)
    if outcome.status != "ok":
        print(outcome.error.display(), file=sys.stderr)
        return 1
    return 0


def cmd_drs(args) -> int:
    session = _session(args)
    _submit_or_die(session, _read(args.file))
    print(session.drs_pre() if args.pre else session.drs_cleaned())
    return 0


def cmd_kb(args) -> int:
    session = _session(args)
    _submit_or_die(session, _read(args.file))
    _, warnings = session.accept()
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    dump = session.kb_dump()
    if dump:
        print(dump)
    return 0


def cmd_query(args) -> int:
    session = _session(args)
    _submit_or_die(session, _read(args.file))
    session.accept()
    outcome = session.query(args.question)
    print(outcome.answer)
    return 0


def _exec_emitter(args):
    def emit(kind: str, payload) -> None:
        if kind in ("trace", "prompt"):
            print(payload, flush=True)
        elif kind == "warning":
            print(f"warning: {payload}", file=sys.stderr)
        elif kind == "error":
            print(payload, file=sys.stderr)
        elif kind == "hook":
            print(payload, flush=True)
    return emit


def cmd_exec(args) -> int:
    session = _session(args)
    _submit_or_die(session, _read(args.file))
    session.accept()
    if args.scaffold:
        _submit_or_die(session, _read(args.scaffold))
        session.accept()
    answers: List[str] = []
    if args.answers:
        answers = [line for line in _read(args.answers).splitlines()
                   if line.strip()]

    def interactive(_prompt: str) -> Optional[str]:
        if not sys.stdin.isatty():
            return None
        try:
            return input()
        except EOFError:
            return None

    result = session.execute(answers=answers, interactive=interactive,
                             raw=args.raw, emit=_exec_emitter(args))
    return 1 if result.error is not None else 0


def cmd_repl(args) -> int:
    session = _session(args)
    print("acekit repl; sentences end with '.', questions with '?'.")
    print("commands: /accept /kb /drs [pre] /lex RECORD /exec /quit")
    while True:
        try:
            line = input("> ").strip()
        except EOFError:
            break
        if not line:
            continue
        try:
            if line in ("/quit", "/exit"):
                break
            if line == "/accept":
                asserted, warnings = session.accept()
                for warning in warnings:
                    print(f"warning: {warning}")
                print(f"ok, {asserted} clauses")
            elif line == "/kb":
                print(session.kb_dump())
            elif line.startswith("/drs"):
                pre = line.split()[1:] == ["pre"]
                print(session.drs_pre() if pre else session.drs_cleaned())
            elif line.startswith("/lex "):
                session.lexicon_edit(line[len("/lex "):])
                print("ok")
            elif line == "/exec":
                session.execute(interactive=lambda p: input(f"{p} "),
                                emit=_exec_emitter(args))
            elif line.endswith("?"):
                print(session.query(line).answer)
            else:
                outcome = session.submit(line)
                for paraphrase in outcome.paraphrases:
                    print(paraphrase)
                for warning in outcome.warnings:
                    print(f"warning: {warning}")
                if outcome.status != "ok":
                    print(outcome.error.display())
                else:
                    print("staged; /accept to commit")
        except AceError as exc:
            print(exc.display())
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    lexicon = _merge_lexicons(args.lexicon or [])
    app = create_app(lexicon, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="acectl",
                                  description="controlled-English workbench")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="ACE text file")
        p.add_argument("--lexicon", action="append", metavar="LEX",
                       help="lexicon file (repeatable)")
        p.add_argument("--depth-limit", type=int,
                       default=DEFAULT_DEPTH_LIMIT, metavar="N")

    p = sub.add_parser("parse", help="paraphrase a document")
    common(p)
    p.add_argument("--tree", action="store_true", help="print syntax trees")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("drs", help="print the cleaned DRS")
    common(p)
    p.add_argument("--pre", action="store_true",
                   help="print the DRS before cleanup")
    p.set_defaults(fn=cmd_drs)

    p = sub.add_parser("kb", help="print the knowledge base")
    common(p)
    p.set_defaults(fn=cmd_kb)

    p = sub.add_parser("query", help="answer a question over a document")
    common(p)
    p.add_argument("question", help="an ACE question ending in '?'")
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("exec", help="run a document as an event simulation")
    common(p)
    p.add_argument("--scaffold", metavar="S.ace",
                   help="extra definitions accepted before running")
    p.add_argument("--answers", metavar="A.txt",
                   help="scripted prompt answers, one per line")
    p.add_argument("--raw", action="store_true",
                   help="print raw terms instead of descriptions")
    p.set_defaults(fn=cmd_exec)

    p = sub.add_parser("repl", help="interactive dialog")
    common(p, with_file=False)
    p.set_defaults(fn=cmd_repl)

    p = sub.add_parser("serve", help="run the HTTP session service")
    common(p, with_file=False)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", metavar="DIR", default=None,
                   help="also serve a static workbench UI from DIR")
    p.set_defaults(fn=cmd_serve)

    return top


def main(argv: Optional[List[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args)
    except AceError as exc:
        print(exc.display(), file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
