"""HTTP facade over sessions and the prover.

Sessions persist as append-only event-log files, one JSON document per
session; an event is acknowledged only after the rewritten log has been
flushed and atomically swapped into place, so a crash never leaves an
acknowledged event behind. Opponent calls run on a worker thread, one
in flight per session at most, and their results (including discards
and failures) are polled via /proposals rather than blocking the log.
"""

from __future__ import annotations

import logging
import os
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .base import BaseFormatError, UnknownAtomError, base_from_dict, base_to_dict
from .dialectic import (
    DialecticError,
    DialecticalState,
    Event,
    Session,
    SessionFormatError,
    apply_event,
    event_from_dict,
    event_to_dict,
    extract_base,
    load_session,
    replay,
    save_session,
    snapshot,
)
from .formula import ParseError, parse_sequent
from .opponent import (
    MalformedResponseError,
    OracleUnavailableError,
    integrate_proposal,
    proposal_to_dict,
)
from .prover import (
    Prover,
    ResourceLimitError,
    monotonicity_defeats,
    containment_audit,
    proof_to_json,
    transitivity_gaps,
)

log = logging.getLogger(__name__)

DEFAULT_ADDR = "127.0.0.1:8040"


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class UnknownSessionError(KeyError):
    pass


class OracleBusyError(Exception):
    code = "OracleBusy"


def _atomic_write(path: Path, payload: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as f:
        f.write(payload)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)
    try:
        dir_fd = os.open(path.parent, os.O_RDONLY)
        try:
            os.fsync(dir_fd)
        finally:
            os.close(dir_fd)
    except OSError:
        pass  # directory fsync is best effort (not available everywhere)


class SessionStore:
    """File-backed sessions with per-session write serialization."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._states: dict[str, tuple[int, DialecticalState]] = {}
        self._proposals: dict[str, dict] = {}

    def _lock(self, sid: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(sid, threading.Lock())

    def _path(self, sid: str) -> Path:
        return self.root / f"{sid}.json"

    def create(self, name: str) -> str:
        sid = uuid.uuid4().hex[:12]
        while self._path(sid).exists():
            sid = uuid.uuid4().hex[:12]
        _atomic_write(self._path(sid), save_session(Session(name, ())))
        return sid

    def list(self) -> list[dict]:
        entries = []
        for path in sorted(self.root.glob("*.json")):
            try:
                session = load_session(path.read_bytes())
            except (SessionFormatError, DialecticError, OSError):
                continue
            entries.append({"sessionId": path.stem, "name": session.name,
                            "lastSeq": len(session.events)})
        return entries

    def load(self, sid: str) -> Session:
        path = self._path(sid)
        if not path.exists():
            raise UnknownSessionError(sid)
        return load_session(path.read_bytes())

    def state(self, sid: str) -> DialecticalState:
        session = self.load(sid)
        cached = self._states.get(sid)
        if cached and cached[0] == len(session.events):
            return cached[1]
        state = replay(session.events)
        self._states[sid] = (len(session.events), state)
        return state

    def append(self, sid: str, doc: dict) -> Event:
        """Validate, apply, and durably append one event; returns it with seq."""
        with self._lock(sid):
            return self._append_locked(sid, doc)

    def _append_locked(self, sid: str, doc: dict) -> Event:
        session = self.load(sid)
        state = self.state(sid)
        doc = dict(doc)
        doc["seq"] = state.last_seq + 1
        doc.setdefault("timestamp", _now())
        event = event_from_dict(doc)
        new_state = apply_event(state, event)
        events = session.events + (event,)
        _atomic_write(self._path(sid), save_session(Session(session.name, events)))
        self._states[sid] = (len(events), new_state)
        return event

    def _append_events(self, sid: str, session: Session, events, new_state) -> None:
        all_events = session.events + tuple(events)
        _atomic_write(self._path(sid), save_session(Session(session.name, all_events)))
        self._states[sid] = (len(all_events), new_state)

    # ----- oracle orchestration -----

    def proposal_status(self, sid: str) -> dict:
        if not self._path(sid).exists():
            raise UnknownSessionError(sid)
        return self._proposals.get(sid, {"status": "none"})

    def request_oracle(self, sid: str, oracle) -> None:
        with self._lock(sid):
            current = self._proposals.get(sid)
            if current and current.get("status") == "pending":
                raise OracleBusyError("an oracle call is already in flight")
            session = self.load(sid)  # 404 before spawning the worker
            self._proposals[sid] = {"status": "pending"}
        worker = threading.Thread(target=self._run_oracle,
                                  args=(sid, oracle, session), daemon=True)
        worker.start()

    def _run_oracle(self, sid: str, oracle, session: Session) -> None:
        try:
            proposal = oracle.propose(replay(session.events), session.events)
        except (OracleUnavailableError, MalformedResponseError) as e:
            self._proposals[sid] = {"status": "error", "code": e.code,
                                    "detail": str(e)}
            return
        except Exception as e:  # noqa: BLE001 - worker must not die silently
            log.exception("oracle worker failed for session %s", sid)
            self._proposals[sid] = {"status": "error", "code": "OracleUnavailable",
                                    "detail": str(e)}
            return
        with self._lock(sid):
            # Integrate against the state as it is NOW; the respondent may
            # have moved while the oracle was thinking, and stale proposals
            # should be filtered, not applied blindly.
            fresh = self.load(sid)
            state = self.state(sid)
            stamp = _now()
            result = integrate_proposal(state, proposal, timestamp=stamp)
            self._append_events(sid, fresh, result.events, result.state)
            self._proposals[sid] = {
                "status": "ready",
                "proposal": proposal_to_dict(proposal),
                "appliedEvents": [event_to_dict(e) for e in result.events],
                "newPropositions": [
                    {"id": p.id, "text": p.text, "suggestedSide": p.suggested_side}
                    for p in result.accepted_propositions],
                "discarded": list(result.discarded),
            }


def create_app(store: SessionStore, oracle=None) -> FastAPI:
    app = FastAPI(title="elenchus", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])

    def error(status: int, code: str, detail: str, **extra) -> JSONResponse:
        return JSONResponse({"error": code, "detail": detail, **extra},
                            status_code=status)

    @app.exception_handler(UnknownSessionError)
    async def _unknown_session(request: Request, exc: UnknownSessionError):
        return error(404, "UnknownSession", f"no session {exc.args[0]!r}")

    @app.exception_handler(DialecticError)
    async def _dialectic(request: Request, exc: DialecticError):
        return error(409, exc.code, str(exc))

    @app.exception_handler(OracleBusyError)
    async def _busy(request: Request, exc: OracleBusyError):
        return error(409, exc.code, str(exc))

    @app.exception_handler(ParseError)
    async def _parse(request: Request, exc: ParseError):
        return error(400, "ParseError", str(exc), offset=exc.offset)

    @app.exception_handler(BaseFormatError)
    async def _base_format(request: Request, exc: BaseFormatError):
        return error(400, "FormatError", str(exc))

    @app.exception_handler(SessionFormatError)
    async def _session_format(request: Request, exc: SessionFormatError):
        return error(400, "FormatError", str(exc))

    @app.exception_handler(UnknownAtomError)
    async def _unknown_atom(request: Request, exc: UnknownAtomError):
        return error(400, "UnknownAtom", str(exc), atoms=sorted(exc.names))

    @app.exception_handler(ResourceLimitError)
    async def _budget(request: Request, exc: ResourceLimitError):
        return error(503, "ResourceLimit", str(exc))

    @app.get("/")
    async def root():
        return {"service": "elenchus", "status": "ok"}

    @app.get("/sessions")
    async def list_sessions():
        return store.list()

    @app.post("/sessions", status_code=201)
    async def create_session(body: dict):
        name = body.get("name")
        if not isinstance(name, str) or not name.strip():
            raise SessionFormatError('body needs a non-empty "name"')
        return {"sessionId": store.create(name.strip())}

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        session = store.load(sid)
        view = snapshot(store.state(sid))
        view["sessionId"] = sid
        view["name"] = session.name
        return view

    @app.post("/sessions/{sid}/events", status_code=201)
    async def post_event(sid: str, body: dict):
        if "seq" in body:
            raise SessionFormatError("seq is assigned by the server; omit it")
        return event_to_dict(store.append(sid, body))

    @app.post("/sessions/{sid}/oracle", status_code=202)
    async def run_oracle(sid: str):
        if oracle is None:
            return error(503, "OracleUnavailable", "no oracle configured")
        store.request_oracle(sid, oracle)
        return {"status": "pending"}

    @app.get("/sessions/{sid}/proposals")
    async def proposals(sid: str):
        status = store.proposal_status(sid)
        if status.get("status") == "error":
            return error(503, status.get("code", "OracleUnavailable"),
                         status.get("detail", ""))
        return status

    @app.get("/sessions/{sid}/base")
    async def get_base(sid: str):
        return base_to_dict(extract_base(store.state(sid)))

    @app.get("/sessions/{sid}/analysis")
    async def analysis(sid: str):
        base = extract_base(store.state(sid))
        return {
            "containmentAudit": containment_audit(base),
            "transitivityGaps": [list(gap) for gap in transitivity_gaps(base)],
            "monotonicityDefeats": [
                {"lhs": sorted(imp.lhs), "rhs": sorted(imp.rhs), "extra": extra}
                for imp, extra in monotonicity_defeats(base)],
        }

    @app.post("/prove")
    async def prove(body: dict):
        if "sequent" not in body or not isinstance(body["sequent"], str):
            raise SessionFormatError('body needs a "sequent" string')
        if "base" in body:
            base = base_from_dict(body["base"])
        elif "sessionId" in body:
            base = extract_base(store.state(str(body["sessionId"])))
        else:
            raise SessionFormatError('body needs "base" or "sessionId"')
        target = parse_sequent(body["sequent"])
        prover = Prover(base)
        result = prover.derivable(target)
        reply = {"sequent": target.render(), "derivable": result.derivable,
                 "stats": {"nodes": result.stats.nodes,
                           "memoHits": result.stats.memo_hits}}
        if body.get("proof") and result.proof is not None:
            reply["proof"] = proof_to_json(result.proof)
        return reply

    return app


def serve(addr: str = DEFAULT_ADDR, data_dir: str = "elenchus-data",
          oracle=None) -> None:
    import uvicorn

    host, _, port = addr.rpartition(":")
    app = create_app(SessionStore(data_dir), oracle=oracle)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="info")
