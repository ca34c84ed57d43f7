"""Session-oriented HTTP facade for running a consult.

A session holds mutable findings; every mutation synchronously re-runs
inference -> prune -> reduce -> solve and the response carries the full
resulting state (posteriors, prune justifications, components,
recommendation) plus provenance hashes. Sessions are in-memory, optionally
persisted as append-only newline-delimited JSON event logs so any session
can be replayed bit-for-bit.

Endpoints: POST /sessions, GET /sessions/{id}, POST /sessions/{id}/findings,
POST /sessions/{id}/whatif, GET /kb/stats, GET /kb/thresholds, GET /healthz.
Errors are JSON {code, message, detail}.
"""

from __future__ import annotations

import json
import secrets
import threading
from pathlib import Path
from typing import Iterable, Mapping

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .canonical import content_hash
from .decision import ThresholdTable, expected_utility, threshold_table, thresholds_hash
from .errors import (
    CapExceededError,
    ConsultError,
    InvalidModelError,
    ZeroEvidenceError,
)
from .formulation import FormulationResult, Policy, formulate_full
from .kb import (
    EMPTY_FINDINGS,
    Findings,
    KnowledgeBase,
    Violation,
    findings_to_dict,
    kb_hash,
    kb_stats,
    validate_findings,
)


class UnknownSessionError(ConsultError):
    pass


class FindingsDelta(BaseModel):
    set_present: list[str] = Field(default_factory=list)
    set_absent: list[str] = Field(default_factory=list)
    clear: list[str] = Field(default_factory=list)


class CreateSessionRequest(BaseModel):
    policy: dict | None = None


class WhatIfRequest(BaseModel):
    assignment: dict[str, bool]


def apply_delta(findings: Findings, delta: FindingsDelta) -> Findings:
    """Clear first, then set; an id in both set lists is a conflict."""
    conflict = set(delta.set_present) & set(delta.set_absent)
    if conflict:
        raise InvalidModelError(
            Violation(i, "conflicting-delta", "set both present and absent")
            for i in sorted(conflict)
        )
    present, absent = set(findings.present), set(findings.absent)
    for i in delta.clear:
        present.discard(i)
        absent.discard(i)
    for i in delta.set_present:
        absent.discard(i)
        present.add(i)
    for i in delta.set_absent:
        present.discard(i)
        absent.add(i)
    return Findings(frozenset(present), frozenset(absent))


class Session:
    """One consult: current findings plus the last pipeline result.

    Requests touching the same session hold its lock, so per-session
    processing is serialized while distinct sessions proceed in parallel.
    """

    def __init__(self, session_id: str, policy: Policy) -> None:
        self.id = session_id
        self.policy = policy
        self.findings: Findings = EMPTY_FINDINGS
        self.result: FormulationResult | None = None
        self.lock = threading.Lock()

    def recompute(
        self, kb: KnowledgeBase, thresholds: ThresholdTable, findings: Findings
    ) -> None:
        # Compute before committing so failures leave the session unchanged.
        result = formulate_full(kb, findings, thresholds, self.policy)
        self.findings = findings
        self.result = result

    def state_dict(self, kb_digest: str, thresholds_digest: str) -> dict:
        result = self.result
        return {
            "id": self.id,
            "policy": self.policy.to_dict(),
            "findings": findings_to_dict(self.findings),
            "posteriors": result.report.to_dict(),
            "prune": [d.to_dict() for d in result.decisions],
            "reduced": result.model.to_dict(),
            "recommendation": result.recommendation.to_dict(),
            "provenance": {
                "kb_hash": kb_digest,
                "thresholds_hash": thresholds_digest,
                "method": result.report.method,
                "budget": result.report.budget_used,
            },
        }


_ERROR_STATUS = {
    UnknownSessionError: (404, "unknown_session"),
    ZeroEvidenceError: (422, "zero_evidence"),
    CapExceededError: (422, "cap_exceeded"),
    InvalidModelError: (400, "invalid_request"),
}


def _error_response(status: int, code: str, message: str, detail=None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "detail": detail},
    )


def create_app(
    kb: KnowledgeBase,
    thresholds: ThresholdTable | None = None,
    *,
    policy: Policy = Policy(),
    cors_origins: Iterable[str] = ("*",),
    log_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service around an immutable KB + threshold table."""
    thresholds = thresholds if thresholds is not None else threshold_table(kb)
    thresholds.check_fresh(kb)
    kb_digest = kb_hash(kb)
    thresholds_digest = thresholds_hash(thresholds)
    log_path = Path(log_dir) if log_dir is not None else None
    if log_path is not None:
        log_path.mkdir(parents=True, exist_ok=True)

    app = FastAPI(title="consult", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    def log_event(session_id: str, event: Mapping) -> None:
        if log_path is None:
            return
        with (log_path / f"{session_id}.ndjson").open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def get_session(session_id: str) -> Session:
        with store_lock:
            session = sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        return session

    def state_response(session: Session) -> dict:
        state = session.state_dict(kb_digest, thresholds_digest)
        state["state_hash"] = content_hash(state)
        return state

    @app.exception_handler(ConsultError)
    async def handle_consult_error(request, exc: ConsultError):
        for cls, (status, code) in _ERROR_STATUS.items():
            if isinstance(exc, cls):
                detail = (
                    [str(v) for v in exc.violations]
                    if isinstance(exc, InvalidModelError)
                    else None
                )
                return _error_response(status, code, str(exc), detail)
        return _error_response(400, "consult_error", str(exc))

    @app.exception_handler(ValueError)
    async def handle_value_error(request, exc: ValueError):
        return _error_response(400, "invalid_request", str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request, exc: RequestValidationError):
        return _error_response(400, "invalid_request", "request body failed validation", exc.errors())

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/kb/stats")
    def stats():
        return {
            "stats": kb_stats(kb),
            "kb_hash": kb_digest,
            "catalog": {
                "diseases": [{"id": d.id, "name": d.name} for d in kb.diseases],
                "manifestations": [
                    {"id": m.id, "name": m.name} for m in kb.manifestations
                ],
                "treatments": [
                    {"id": t.id, "name": t.name, "treats": list(t.treats)}
                    for t in kb.treatments
                ],
            },
        }

    @app.get("/kb/thresholds")
    def thresholds_endpoint():
        return thresholds.to_dict()

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        session_policy = Policy.from_dict(req.policy) if req.policy else policy
        session_id = secrets.token_urlsafe(16)  # 128 bits of entropy
        session = Session(session_id, session_policy)
        session.recompute(kb, thresholds, EMPTY_FINDINGS)
        with store_lock:
            sessions[session_id] = session
        log_event(session_id, {"event": "create", "session": session_id, "policy": session_policy.to_dict()})
        return state_response(session)

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return state_response(session)

    @app.post("/sessions/{session_id}/findings")
    def update_findings(session_id: str, delta: FindingsDelta):
        session = get_session(session_id)
        with session.lock:
            new_findings = apply_delta(session.findings, delta)
            violations = validate_findings(kb, new_findings)
            if violations:
                raise InvalidModelError(violations)
            session.recompute(kb, thresholds, new_findings)
            log_event(session_id, {"event": "findings", "delta": delta.model_dump()})
            return state_response(session)

    @app.post("/sessions/{session_id}/whatif")
    def what_if(session_id: str, req: WhatIfRequest):
        session = get_session(session_id)
        with session.lock:
            unknown = sorted(set(req.assignment) - set(kb.treatment_by_id))
            if unknown:
                raise InvalidModelError(
                    Violation(t, "unknown-treatment", "what-if names unknown treatment")
                    for t in unknown
                )
            recommended = session.result.recommendation.assignment()
            completed = dict(recommended)
            completed.update(req.assignment)
            eu = expected_utility(kb, session.findings, completed)
            eu_recommended = expected_utility(kb, session.findings, recommended)
            state = session.state_dict(kb_digest, thresholds_digest)
            return {
                "assignment": {k: completed[k] for k in sorted(completed)},
                "eu": eu,
                "delta_vs_recommended": eu - eu_recommended,
                "state_hash": content_hash(state),
            }

    return app


def replay_session_log(
    kb: KnowledgeBase, thresholds: ThresholdTable, path: str | Path
) -> tuple[dict, str]:
    """Rebuild a session from its event log.

    Returns (state_dict, state_hash); both must match what the live
    session reported after the same events."""
    events = [
        json.loads(line)
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    if not events or events[0].get("event") != "create":
        raise ValueError(f"{path}: log must start with a create event")
    session = Session(events[0]["session"], Policy.from_dict(events[0]["policy"]))
    session.recompute(kb, thresholds, EMPTY_FINDINGS)
    for event in events[1:]:
        if event.get("event") != "findings":
            continue
        delta = FindingsDelta(**event["delta"])
        session.recompute(kb, thresholds, apply_delta(session.findings, delta))
    state = session.state_dict(kb_hash(kb), thresholds_hash(thresholds))
    return state, content_hash(state)
