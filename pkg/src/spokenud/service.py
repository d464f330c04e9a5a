"""Local HTTP service exposing one adjudication session to the web UI.

Single-user, localhost-by-default tool: no authentication. Every mutation
is applied and persisted to the session file under one lock before the
response is sent, so a killed and restarted service always reflects the
last acknowledged write.
"""

from __future__ import annotations

import threading
import webbrowser
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import adjudication, conllu
from .adjudication import AdjudicationSession, CustomValues, Resolution
from .errors import WorkbenchError

DEFAULT_PORT = 7700

_STATUS_BY_CODE = {
    "UNKNOWN_RECORD": 404,
    "UNKNOWN_SENTENCE": 404,
    "UNRESOLVED_REMAIN": 409,
    "EXPORT_INVALID_TREE": 409,
}


def status_for(code: str) -> int:
    if code in _STATUS_BY_CODE:
        return _STATUS_BY_CODE[code]
    if code.startswith("INVALID_"):
        return 422
    return 400  # parse and load failures


def default_static_dir() -> Path:
    return Path(__file__).parent / "webui"


class CustomValuesIn(BaseModel):
    upos: str | None = None
    head: int
    deprel: str


class ResolutionIn(BaseModel):
    token_id: int
    choice: Literal["take_a", "take_b", "custom"]
    custom_values: CustomValuesIn | None = None
    note: str | None = None


class SessionStore:
    """Owns the live session; serializes mutations and persists before replying."""

    def __init__(self, session: AdjudicationSession, path: Path):
        self.session = session
        self.path = path
        self.lock = threading.Lock()

    def mutate(self, action) -> None:
        with self.lock:
            action(self.session)
            adjudication.save_session(self.session, self.path)


def _token_json(token: conllu.Token) -> dict:
    return {
        "id": token.id,
        "form": token.form,
        "lemma": token.lemma,
        "upos": token.upos,
        "xpos": token.xpos,
        "feats": [list(pair) for pair in token.feats],
        "head": token.head,
        "deprel": token.deprel,
        "deps": token.deps,
        "misc": [list(pair) for pair in token.misc],
        "lang": token.lang,
    }


def create_app(session_path: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    path = Path(session_path)
    store = SessionStore(adjudication.load_session(path), path)
    app = FastAPI(title="spokenud adjudication", version="0.1.0")

    @app.exception_handler(WorkbenchError)
    async def workbench_error(_request: Request, exc: WorkbenchError):
        status = status_for(exc.code)
        return JSONResponse(
            {"code": exc.code, "message": exc.message, "http_status": status},
            status_code=status)

    @app.exception_handler(RequestValidationError)
    async def bad_request(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            {"code": "BAD_REQUEST", "message": str(exc.errors()), "http_status": 400},
            status_code=400)

    def sentence_pair(index: int):
        session = store.session
        if not 0 <= index < len(session.doc_a.sentences):
            raise WorkbenchError("UNKNOWN_SENTENCE",
                                 f"sentence index {index} out of range "
                                 f"0..{len(session.doc_a.sentences) - 1}")
        return session.doc_a.sentences[index], session.doc_b.sentences[index]

    def sentence_summary(index: int) -> dict:
        session = store.session
        sent = session.doc_a.sentences[index]
        records = [r for r in session.records if r.sent_id == sent.sent_id]
        resolved = sum(1 for r in records
                       if (r.sent_id, r.token_id) in session.resolutions)
        return {
            "index": index,
            "sent_id": sent.sent_id,
            "text": sent.text or " ".join(sent.forms),
            "record_count": len(records),
            "resolved_count": resolved,
        }

    @app.get("/api/session")
    def get_session():
        session = store.session
        return {
            "annotators": list(session.annotator_names),
            "sentence_count": len(session.doc_a.sentences),
            "record_count": len(session.records),
            "resolved_count": len(session.resolutions),
        }

    @app.get("/api/sentences")
    def get_sentences(only: str | None = None):
        session = store.session
        rows = [sentence_summary(i) for i in range(len(session.doc_a.sentences))]
        if only == "disagreeing":
            rows = [row for row in rows if row["record_count"] > 0]
        return rows

    @app.get("/api/sentences/{index}")
    def get_sentence(index: int):
        session = store.session
        sent_a, sent_b = sentence_pair(index)
        records = [r for r in session.records if r.sent_id == sent_a.sent_id]
        resolutions = [session.resolutions[(r.sent_id, r.token_id)].to_json()
                       for r in records
                       if (r.sent_id, r.token_id) in session.resolutions]
        return {
            **sentence_summary(index),
            "tokens_a": [_token_json(t) for t in sent_a.tokens],
            "tokens_b": [_token_json(t) for t in sent_b.tokens],
            "records": [r.to_json() for r in records],
            "resolutions": resolutions,
        }

    @app.post("/api/sentences/{index}/resolutions")
    def post_resolution(index: int, body: ResolutionIn):
        sent_a, _ = sentence_pair(index)
        custom = None
        if body.custom_values is not None:
            custom = CustomValues(body.custom_values.upos, body.custom_values.head,
                                  body.custom_values.deprel)
        resolution = Resolution(sent_a.sent_id, body.token_id, body.choice,
                                custom, body.note)
        store.mutate(lambda session: adjudication.apply_resolution(session, resolution))
        return resolution.to_json()

    @app.delete("/api/sentences/{index}/resolutions/{token_id}")
    def delete_resolution(index: int, token_id: int):
        sent_a, _ = sentence_pair(index)
        store.mutate(lambda session: adjudication.remove_resolution(
            session, sent_a.sent_id, token_id))
        return {"removed": {"sent_id": sent_a.sent_id, "token_id": token_id}}

    @app.get("/api/progress")
    def get_progress():
        resolved, total, provisional = adjudication.progress(store.session)
        return {"resolved": resolved, "total": total,
                "provisional": provisional.to_json()}

    @app.get("/api/export")
    def get_export(allow_partial: bool = False):
        gold = adjudication.export_gold(store.session, allow_partial=allow_partial)
        return PlainTextResponse(conllu.serialize(gold), media_type="text/plain; charset=utf-8")

    assets = Path(static_dir) if static_dir is not None else default_static_dir()
    if assets.is_dir():
        app.mount("/", StaticFiles(directory=assets, html=True), name="ui")
    else:
        @app.get("/")
        def no_ui():
            return PlainTextResponse(
                "spokenud service is running; the web UI has not been built "
                "(see frontend/ in the repository).")

    return app


def serve(session_path: str | Path, port: int = DEFAULT_PORT, bind: str = "127.0.0.1",
          open_browser: bool = False, static_dir: str | Path | None = None) -> None:
    """Run the adjudication service until interrupted."""
    import uvicorn

    app = create_app(session_path, static_dir=static_dir)
    if open_browser:
        url = f"http://{bind}:{port}/"
        threading.Timer(0.8, webbrowser.open, args=(url,)).start()
    uvicorn.run(app, host=bind, port=port, log_level="warning")
