"""HTTP session service for interactive, iterative theory evolution.

One JSON file per theory and per session under the data directory, written
via temp-file-plus-rename so a crash after any completed mutation replays to
the same state.  Mutating requests on one session are serialized behind a
per-session lock; reads work on immutable snapshots.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .entailment import (
    biggest_model,
    is_consistent,
    is_modular,
    simplified_implicit_laws,
)
from .kripke import canonical_frame, is_model_of, model_to_json
from .laws import ActionTheory, EffectLaw, StaticLaw
from .modelchange import contract_model_set, revise_model_set
from .parsing import (
    ParseError,
    parse_law,
    parse_theory,
    render_formula,
    render_law,
    render_theory,
    theory_from_json,
    theory_to_json,
)
from .theorychange import TheoryCandidate, contract, theory_from_model_set


class TheoryIn(BaseModel):
    text: str


class SessionIn(BaseModel):
    theoryId: str


class LawIn(BaseModel):
    law: str


class SelectIn(BaseModel):
    candidateId: str


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


# --- law-level diffs ------------------------------------------------------------

def _law_bucket(law) -> tuple:
    if isinstance(law, StaticLaw):
        return ("static",)
    if isinstance(law, EffectLaw):
        return ("effect", law.action)
    return ("exec", law.action)


def _diff(old: ActionTheory, new: ActionTheory) -> dict:
    """Law-level diff: removed/added paired up as 'modified' per bucket."""
    old_laws = list(old.laws())
    new_laws = list(new.laws())
    removed = [l for l in old_laws if l not in new_laws]
    added = [l for l in new_laws if l not in old_laws]
    modified, removed_out, added_out = [], [], []
    buckets = sorted({_law_bucket(l) for l in removed + added})
    for bucket in buckets:
        r = [l for l in removed if _law_bucket(l) == bucket]
        a = [l for l in added if _law_bucket(l) == bucket]
        for before, after in zip(r, a):
            modified.append(
                {"before": render_law(before), "after": render_law(after)}
            )
        removed_out += [render_law(l) for l in r[len(a):]]
        added_out += [render_law(l) for l in a[len(r):]]
    return {"added": added_out, "removed": removed_out, "modified": modified}


def _model_graph(theory: ActionTheory) -> dict:
    report = is_modular(theory)
    if report.modular:
        return {"kind": "canonical", "model": model_to_json(canonical_frame(theory))}
    return {"kind": "biggest", "model": model_to_json(biggest_model(theory).model)}


def _semantic_counterparts(theory: ActionTheory, law, candidates) -> dict[int, dict]:
    """Pair each candidate with its minimal contracted model when unique.

    The correspondence (Corollary 6.1) pairs semantic results with syntactic
    candidates on modular theories; where the pairing is ambiguous or absent
    the candidate keeps its canonical/biggest graph.
    """
    if not is_modular(theory).modular:
        return {}
    base = canonical_frame(theory)
    outcome = contract_model_set([base], law)
    pairing: dict[int, list] = {}
    for result in outcome.results:
        changed = [m for m in result if m != base] or [base]
        hits = [
            i
            for i, cand in enumerate(candidates)
            if is_model_of(changed[0], cand.theory)
        ]
        if len(hits) == 1:
            pairing.setdefault(hits[0], []).append(changed[0])
    return {
        i: {"kind": "contracted", "model": model_to_json(models[0])}
        for i, models in pairing.items()
        if len(models) == 1
    }


def _candidate_payload(base: ActionTheory, cand: TheoryCandidate, cid: str) -> dict:
    from .formula import term_formula, valuation_formula

    provenance: dict = {}
    if cand.context is not None:
        provenance["context"] = render_formula(
            valuation_formula(base.sig, cand.context)
        )
    if cand.pi_prime is not None:
        provenance["piPrime"] = render_formula(term_formula(cand.pi_prime))
    if cand.kernels:
        provenance["kernels"] = [
            [render_law(l) for l in kernel] for kernel in cand.kernels
        ]
    if cand.note:
        provenance["note"] = cand.note
    return {
        "id": cid,
        "theory": theory_to_json(cand.theory),
        "theoryText": render_theory(cand.theory),
        "diff": _diff(base, cand.theory),
        "modelGraph": _model_graph(cand.theory),
        "provenance": provenance,
    }


# --- persistent store --------------------------------------------------------------

def _write_json(path: Path, doc) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    tmp.replace(path)


@dataclass
class SessionState:
    id: str
    theory_id: str
    current: ActionTheory
    history: list = field(default_factory=list)
    pending: dict | None = None  # {"kind", "law", "candidates": [...]}

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "theoryId": self.theory_id,
            "currentTheory": theory_to_json(self.current),
            "history": self.history,
            "pending": self.pending,
        }


class Store:
    def __init__(self, data_dir: str | Path):
        self.root = Path(data_dir)
        (self.root / "theories").mkdir(parents=True, exist_ok=True)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock_for(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    # theories

    def save_theory(self, theory_id: str, doc: dict) -> None:
        _write_json(self.root / "theories" / f"{theory_id}.json", doc)

    def load_theory(self, theory_id: str) -> dict:
        path = self.root / "theories" / f"{theory_id}.json"
        if not path.exists():
            raise ApiError(404, f"unknown theory {theory_id}")
        return json.loads(path.read_text(encoding="utf-8"))

    # sessions

    def save_session(self, state: SessionState) -> None:
        _write_json(self.root / "sessions" / f"{state.id}.json", state.to_json())

    def load_session(self, session_id: str) -> SessionState:
        path = self.root / "sessions" / f"{session_id}.json"
        if not path.exists():
            raise ApiError(404, f"unknown session {session_id}")
        doc = json.loads(path.read_text(encoding="utf-8"))
        return SessionState(
            id=doc["id"],
            theory_id=doc["theoryId"],
            current=theory_from_json(doc["currentTheory"]),
            history=doc["history"],
            pending=doc.get("pending"),
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _parse_session_law(theory: ActionTheory, text: str):
    try:
        return parse_law(text, theory.sig)
    except ParseError as exc:
        raise ApiError(400, f"malformed law: {exc}") from None


def create_app(data_dir: str | Path) -> FastAPI:
    store = Store(data_dir)
    app = FastAPI(title="atc session service")

    @app.exception_handler(ApiError)
    async def _api_error(_, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"error": exc.message})

    @app.post("/api/theories")
    def post_theory(body: TheoryIn):
        try:
            theory = parse_theory(body.text)
        except ParseError as exc:
            raise ApiError(400, f"parse error: {exc}") from None
        report = is_modular(theory)
        theory_id = uuid.uuid4().hex[:12]
        doc = {
            "id": theory_id,
            "text": body.text,
            "theory": theory_to_json(theory),
            "modular": report.modular,
            "implicitLaws": [
                render_formula(f) for f in simplified_implicit_laws(theory)
            ],
        }
        store.save_theory(theory_id, doc)
        return {
            "id": theory_id,
            "modular": report.modular,
            "implicitLaws": doc["implicitLaws"],
        }

    @app.get("/api/theories/{theory_id}")
    def get_theory(theory_id: str):
        return store.load_theory(theory_id)

    @app.post("/api/sessions")
    def post_session(body: SessionIn):
        doc = store.load_theory(body.theoryId)
        theory = theory_from_json(doc["theory"])
        session_id = uuid.uuid4().hex[:12]
        state = SessionState(session_id, body.theoryId, theory)
        store.save_session(state)
        return state.to_json()

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        return store.load_session(session_id).to_json()

    def _mutate(session_id: str, fn):
        with store.lock_for(session_id):
            state = store.load_session(session_id)
            result = fn(state)
            store.save_session(state)
            return result

    @app.post("/api/sessions/{session_id}/contract")
    def post_contract(session_id: str, body: LawIn):
        def go(state: SessionState):
            law = _parse_session_law(state.current, body.law)
            cands = contract(state.current, law)
            payloads = [
                _candidate_payload(state.current, cand, f"c{i}")
                for i, cand in enumerate(cands)
            ]
            for i, graph in _semantic_counterparts(
                state.current, law, cands
            ).items():
                payloads[i]["modelGraph"] = graph
            state.pending = {
                "kind": "contract",
                "law": body.law,
                "candidates": payloads,
            }
            return {"candidates": payloads}

        return _mutate(session_id, go)

    @app.post("/api/sessions/{session_id}/revise")
    def post_revise(session_id: str, body: LawIn):
        def go(state: SessionState):
            law = _parse_session_law(state.current, body.law)
            if not is_consistent(state.current):
                raise ApiError(422, "cannot revise an inconsistent theory")
            report = is_modular(state.current)
            if not report.modular:
                raise ApiError(
                    422,
                    "revision needs a canonical model; the theory is not modular",
                )
            outcome = revise_model_set([canonical_frame(state.current)], law)
            if not outcome.results:
                raise ApiError(
                    422, "revision impossible: " + "; ".join(outcome.notes)
                )
            payloads = []
            for i, result in enumerate(outcome.results):
                induced = theory_from_model_set(
                    result, state.current.sig, name=f"{state.current.name}_rev"
                )
                cand = TheoryCandidate(induced, note="induced from revised models")
                payload = _candidate_payload(state.current, cand, f"c{i}")
                payload["modelGraph"] = {
                    "kind": "revised",
                    "model": model_to_json(result[-1]),
                }
                payloads.append(payload)
            state.pending = {
                "kind": "revise",
                "law": body.law,
                "candidates": payloads,
            }
            return {"candidates": payloads}

        return _mutate(session_id, go)

    @app.post("/api/sessions/{session_id}/select")
    def post_select(session_id: str, body: SelectIn):
        def go(state: SessionState):
            if not state.pending:
                raise ApiError(409, "no pending candidates")
            hits = [
                c for c in state.pending["candidates"] if c["id"] == body.candidateId
            ]
            if not hits:
                raise ApiError(409, f"stale candidate id {body.candidateId}")
            chosen = hits[0]
            step = {
                "request": {
                    "kind": state.pending["kind"],
                    "law": state.pending["law"],
                },
                "candidates": [c["id"] for c in state.pending["candidates"]],
                "selected": body.candidateId,
                "timestamp": _now(),
                "previousTheory": theory_to_json(state.current),
                "resultTheory": chosen["theory"],
            }
            step["modelGraph"] = chosen["modelGraph"]
            state.history.append(step)
            state.current = theory_from_json(chosen["theory"])
            state.pending = None
            return state.to_json()

        return _mutate(session_id, go)

    @app.post("/api/sessions/{session_id}/undo")
    def post_undo(session_id: str):
        def go(state: SessionState):
            if not state.history:
                raise ApiError(409, "nothing to undo")
            step = state.history.pop()
            state.current = theory_from_json(step["previousTheory"])
            state.pending = None
            return state.to_json()

        return _mutate(session_id, go)

    @app.get("/api/sessions/{session_id}/model")
    def get_model(session_id: str):
        state = store.load_session(session_id)
        if state.history:
            graph = state.history[-1].get("modelGraph")
            if graph and graph["kind"] in ("contracted", "revised"):
                return graph
        return _model_graph(state.current)

    return app
