"""HTTP-JSON session service.

One dialog session per id; within a session requests are serialized by a
lock, so the core pipeline runs strictly single-threaded per session.
Execution runs on a background thread: events (trace/prompt/warning/done/
error) are collected with sequence numbers for the polling client, and a
prompt blocks the run until an answer arrives on the answer endpoint or the
wait times out.
"""

import queue
import threading
import uuid
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import lexicon as lx
from .errors import AceError
from .session import Session

PROMPT_TIMEOUT_SECONDS = 300.0


class SentenceBody(BaseModel):
    text: str


class RecordBody(BaseModel):
    record: str


class ExecBody(BaseModel):
    answers: Optional[List[str]] = None
    raw: bool = False


class AnswerBody(BaseModel):
    text: str


def _error_payload(exc: AceError) -> dict:
    at = exc.pos.display() if exc.pos is not None else None
    return {"kind": exc.kind, "detail": exc.detail, "at": at}


class _SessionBox:
    def __init__(self, session: Session):
        self.session = session
        self.lock = threading.Lock()
        self.events: List[dict] = []
        self.answers: "queue.Queue[str]" = queue.Queue()
        self.exec_thread: Optional[threading.Thread] = None
        self.prompt_open = False

    def emit(self, kind: str, payload) -> None:
        self.events.append({"seq": len(self.events), "kind": kind,
                            "data": payload})

    def running(self) -> bool:
        return self.exec_thread is not None and self.exec_thread.is_alive()


def create_app(base_lexicon: Optional[lx.Lexicon] = None,
               ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="acekit session service")
    if base_lexicon is None:
        base_lexicon = lx.Lexicon()
    boxes: Dict[str, _SessionBox] = {}

    def box_for(session_id: str) -> _SessionBox:
        box = boxes.get(session_id)
        if box is None:
            raise HTTPException(status_code=404, detail="no such session")
        return box

    def ace_400(exc: AceError):
        raise HTTPException(status_code=400, detail=_error_payload(exc))

    @app.post("/sessions")
    def create_session():
        session_id = uuid.uuid4().hex[:12]
        boxes[session_id] = _SessionBox(Session(base_lexicon))
        return {"id": session_id}

    @app.post("/sessions/{session_id}/sentences")
    def submit(session_id: str, body: SentenceBody):
        box = box_for(session_id)
        with box.lock:
            outcome = box.session.submit(body.text)
            result = {
                "status": outcome.status,
                "paraphrase": outcome.paraphrases,
                "warnings": outcome.warnings,
                "staged": outcome.staged_sentences,
                "errors": [],
            }
            if outcome.status == "ok":
                result["drs"] = box.session.drs_pre()
            if outcome.error is not None:
                result["errors"].append(_error_payload(outcome.error))
            return result

    @app.post("/sessions/{session_id}/accept")
    def accept(session_id: str):
        box = box_for(session_id)
        with box.lock:
            try:
                asserted, warnings = box.session.accept()
            except AceError as exc:
                ace_400(exc)
            return {"status": "ok", "asserted": asserted,
                    "warnings": warnings}

    @app.post("/sessions/{session_id}/query")
    def query(session_id: str, body: SentenceBody):
        box = box_for(session_id)
        with box.lock:
            try:
                outcome = box.session.query(body.text)
            except AceError as exc:
                ace_400(exc)
            return {"answer": outcome.answer, "bindings": outcome.bindings}

    @app.get("/sessions/{session_id}/kb")
    def kb(session_id: str):
        box = box_for(session_id)
        with box.lock:
            return {"kb": box.session.kb_dump()}

    @app.get("/sessions/{session_id}/drs")
    def drs(session_id: str):
        box = box_for(session_id)
        with box.lock:
            return {"pre": box.session.drs_pre(),
                    "cleaned": box.session.drs_cleaned()}

    @app.post("/sessions/{session_id}/lexicon")
    def lexicon_edit(session_id: str, body: RecordBody):
        box = box_for(session_id)
        with box.lock:
            try:
                box.session.lexicon_edit(body.record)
            except AceError as exc:
                ace_400(exc)
            return {"status": "ok"}

    @app.get("/sessions/{session_id}/lexicon")
    def lexicon_dump(session_id: str):
        box = box_for(session_id)
        with box.lock:
            return {"text": lx.save(box.session.lexicon)}

    @app.post("/sessions/{session_id}/exec")
    def start_exec(session_id: str, body: ExecBody):
        box = box_for(session_id)
        if box.running():
            raise HTTPException(status_code=409,
                                detail="an execution is already running")
        box.events = []
        box.answers = queue.Queue()

        def interactive(_prompt: str) -> Optional[str]:
            box.prompt_open = True
            try:
                return box.answers.get(timeout=PROMPT_TIMEOUT_SECONDS)
            except queue.Empty:
                return None
            finally:
                box.prompt_open = False

        def task():
            with box.lock:
                box.session.execute(answers=body.answers,
                                    interactive=interactive,
                                    raw=body.raw, emit=box.emit)

        box.exec_thread = threading.Thread(target=task, daemon=True)
        box.exec_thread.start()
        return {"status": "started"}

    @app.get("/sessions/{session_id}/exec/events")
    def exec_events(session_id: str, since: int = 0):
        box = box_for(session_id)
        events = box.events
        return {"events": [e for e in events if e["seq"] >= since],
                "running": box.running()}

    @app.post("/sessions/{session_id}/exec/answer")
    def exec_answer(session_id: str, body: AnswerBody):
        box = box_for(session_id)
        if not box.running():
            raise HTTPException(status_code=400,
                                detail="no execution is waiting for an answer")
        box.answers.put(body.text)
        return {"status": "ok"}

    if ui_dir is not None:
        # Same-origin static hosting for the workbench pages; mounted last so
        # the JSON routes above keep precedence.
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
