"""HTTP session service for interactive proof construction.

JSON API (payloads versioned with ``"version": 1``):

* ``POST   /sessions {goal}``                    -> ``{id, tree}``
* ``GET    /sessions/{id}``                      -> ``{id, tree}``
* ``POST   /sessions/{id}/suggest {count, goal_id?}`` -> scored, pre-checked tactics
* ``POST   /sessions/{id}/apply {tactic_text, goal_id?}`` -> new tree or 422
* ``POST   /sessions/{id}/undo`` / ``/redo``     -> tree
* ``GET    /sessions/{id}/export?format=mm|jsonl``
* ``POST   /sessions/{id}/search {params}``      -> ``{job_id}`` (cancellable)
* ``GET    /jobs/{id}``, ``POST /jobs/{id}/cancel``
* ``GET    /theorems?query=``                    -> statement-text search

Sessions live in memory with a TTL; one session's mutations are
serialized under a per-session lock. The shared database is immutable.
"""

from __future__ import annotations

import copy
import itertools
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .kernel import Database, HypLeaf, ProofNode, export_proof
from .kernel.errors import DVViolationError, MMError
from .policy.tactic import TacticError, apply_tactic, parse_tactic
from .proofdata import records_from_tree
from .search import SearchParams, SearchStatement, run_search

API_VERSION = 1


@dataclass
class SessionGoal:
    id: int
    text: str
    expr: tuple
    status: str = "open"                    # open | proved
    tactics: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"id": self.id, "text": self.text, "status": self.status,
                "tactics": [t.to_json() for t in self.tactics]}


@dataclass
class SessionTactic:
    label: str
    text: str
    children: list[SessionGoal] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return all(c.status == "proved" for c in self.children)

    def to_json(self) -> dict:
        return {"label": self.label, "text": self.text,
                "children": [c.to_json() for c in self.children]}


class ManualTree:
    """Human-driven proof tree: tactics applied explicitly, undo/redo stack."""

    def __init__(self, db: Database, statement: SearchStatement):
        self.db = db
        self.statement = statement
        self._ids = itertools.count()
        self.root = self._goal(statement.expr)
        self.goals: dict[int, SessionGoal] = {self.root.id: self.root}
        self._check_hyp(self.root)

    def _goal(self, expr) -> SessionGoal:
        text = self.statement.goal_text(expr)
        return SessionGoal(next(self._ids), text, tuple(expr))

    def _check_hyp(self, g: SessionGoal) -> None:
        if g.expr in {tuple(h) for h in self.statement.e_hyps}:
            g.status = "proved"

    def apply(self, goal_id: int, tactic_text: str) -> None:
        g = self.goals.get(goal_id)
        if g is None:
            raise MMError(f"no goal with id {goal_id}")
        if g.status == "proved":
            raise MMError(f"goal {goal_id} is already proved")
        parsed = parse_tactic(self.db, tactic_text, self.statement.ceiling)
        child_exprs = apply_tactic(self.db, parsed, g.expr,
                                   self.statement.dv_all)
        t = SessionTactic(parsed.assertion.label, tactic_text)
        for expr in child_exprs:
            child = self._goal(expr)
            self.goals[child.id] = child
            self._check_hyp(child)
            t.children.append(child)
        g.tactics.append(t)
        if t.complete:
            self._propagate(g)

    def _propagate(self, g: SessionGoal) -> None:
        if g.status == "proved":
            return
        if any(t.complete for t in g.tactics):
            g.status = "proved"
            parent = self._parent_of(g)
            if parent is not None:
                self._propagate(parent)

    def _parent_of(self, g: SessionGoal) -> SessionGoal | None:
        for other in self.goals.values():
            for t in other.tactics:
                if any(c.id == g.id for c in t.children):
                    return other
        return None

    def first_open(self) -> SessionGoal | None:
        for gid in sorted(self.goals):
            if self.goals[gid].status == "open":
                return self.goals[gid]
        return None

    def to_json(self) -> dict:
        return {"version": API_VERSION, "statement": self.statement.label,
                "proved": self.root.status == "proved",
                "root": self.root.to_json()}

    def to_proof(self):
        hyp_set = {tuple(h) for h in self.statement.e_hyps}

        def build(g: SessionGoal):
            if g.expr in hyp_set:
                return HypLeaf("", g.expr)
            t = next((t for t in g.tactics if t.complete), None)
            if t is None:
                raise MMError(f"goal {g.id} is still open")
            parsed = parse_tactic(self.db, t.text, self.statement.ceiling)
            return ProofNode(t.label, dict(parsed.subst),
                             [build(c) for c in t.children], g.expr)

        return build(self.root)


@dataclass
class Session:
    id: str
    tree: ManualTree
    created: float
    expires: float
    undo_stack: list = field(default_factory=list)
    redo_stack: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class _Job:
    def __init__(self):
        self.id = uuid.uuid4().hex
        self.status = "running"
        self.result = None
        self.cancelled = threading.Event()


class CreateSession(BaseModel):
    goal: str
    label: str | None = None


class SuggestBody(BaseModel):
    count: int = 8
    goal_id: int | None = None


class ApplyBody(BaseModel):
    tactic_text: str
    goal_id: int | None = None


class SearchBody(BaseModel):
    attempts: int = 1
    expansions: int = 8
    max_expansions: int = 64
    temperature: float = 1.0
    seed: int = 0


def _parse_goal_text(db: Database, text: str) -> SearchStatement:
    text = " ".join(text.split())
    if text.startswith("[[ "):
        hyp_part, concl = text.split("]] ", 1)
        hyp_tokens = hyp_part[3:].split()
        hyps = []
        cur: list[str] = []
        for tok in hyp_tokens:
            if tok == db.provable_tc and cur:
                hyps.append(tuple(cur))
                cur = []
            cur.append(tok)
        if cur:
            hyps.append(tuple(cur))
        expr = tuple(concl.split())
    else:
        hyps = []
        expr = tuple(text.split())
    if not expr or expr[0] != db.provable_tc:
        raise MMError(f"goal must start with {db.provable_tc!r}")
    for tok in expr[1:]:
        if tok not in db.constants and tok not in db.variables:
            raise MMError(f"unknown symbol {tok!r} in goal")
    db.grammar.parse("wff", expr[1:])  # must be grammatical, and uniquely so
    return SearchStatement("session", expr, tuple(hyps))


def create_app(db: Database, policy, session_ttl: float = 3600.0,
               max_sessions: int = 256, scorer=None) -> FastAPI:
    app = FastAPI(title="mmprover session service", version=str(API_VERSION))
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    sessions: dict[str, Session] = {}
    jobs: dict[str, _Job] = {}
    store_lock = threading.Lock()

    def _purge() -> None:
        now = time.monotonic()
        for sid in [s for s, sess in sessions.items() if sess.expires < now]:
            sessions.pop(sid, None)

    def _get(sid: str) -> Session:
        with store_lock:
            _purge()
            sess = sessions.get(sid)
        if sess is None:
            raise HTTPException(404, detail=f"no session {sid}")
        sess.expires = time.monotonic() + session_ttl
        return sess

    @app.post("/sessions")
    def create_session(body: CreateSession):
        try:
            if body.label:
                st = SearchStatement.from_assertion(db, db.theorem(body.label))
            else:
                st = _parse_goal_text(db, body.goal)
        except KeyError:
            raise HTTPException(404, detail=f"no theorem {body.label!r}")
        except MMError as e:
            raise HTTPException(422, detail=str(e))
        with store_lock:
            _purge()
            if len(sessions) >= max_sessions:
                raise HTTPException(503, detail="session store full")
            sid = uuid.uuid4().hex[:12]
            now = time.monotonic()
            sessions[sid] = Session(sid, ManualTree(db, st), now,
                                    now + session_ttl)
        return {"id": sid, "tree": sessions[sid].tree.to_json()}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        sess = _get(sid)
        return {"id": sid, "tree": sess.tree.to_json()}

    @app.post("/sessions/{sid}/suggest")
    def suggest(sid: str, body: SuggestBody):
        sess = _get(sid)
        with sess.lock:
            goal = (sess.tree.goals.get(body.goal_id)
                    if body.goal_id is not None else sess.tree.first_open())
            if goal is None:
                raise HTTPException(422, detail="no open goal to suggest for")
            raw = policy.suggest(goal.text, body.count, 1.0,
                                 sess.tree.statement.ceiling)
            out = []
            for s in raw:
                entry = {"tactic": s.tactic, "logprob": s.logprob,
                         "valid": True, "error": None}
                try:
                    parsed = parse_tactic(db, s.tactic,
                                          sess.tree.statement.ceiling)
                    apply_tactic(db, parsed, goal.expr,
                                 sess.tree.statement.dv_all)
                except (TacticError, DVViolationError) as e:
                    entry["valid"] = False
                    entry["error"] = str(e)
                out.append(entry)
            return {"goal_id": goal.id, "suggestions": out}

    @app.post("/sessions/{sid}/apply")
    def apply(sid: str, body: ApplyBody):
        sess = _get(sid)
        with sess.lock:
            goal = (sess.tree.goals.get(body.goal_id)
                    if body.goal_id is not None else sess.tree.first_open())
            if goal is None:
                raise HTTPException(422, detail="no open goal")
            snapshot = copy.deepcopy(sess.tree)
            try:
                sess.tree.apply(goal.id, body.tactic_text)
            except DVViolationError as e:
                raise HTTPException(
                    422, detail={"error": str(e),
                                 "violations": [list(v) for v in e.violations]})
            except (TacticError, MMError) as e:
                raise HTTPException(422, detail={"error": str(e)})
            sess.undo_stack.append(snapshot)
            sess.redo_stack.clear()
            return {"id": sid, "tree": sess.tree.to_json()}

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        sess = _get(sid)
        with sess.lock:
            if not sess.undo_stack:
                raise HTTPException(422, detail="nothing to undo")
            sess.redo_stack.append(sess.tree)
            sess.tree = sess.undo_stack.pop()
            return {"id": sid, "tree": sess.tree.to_json()}

    @app.post("/sessions/{sid}/redo")
    def redo(sid: str):
        sess = _get(sid)
        with sess.lock:
            if not sess.redo_stack:
                raise HTTPException(422, detail="nothing to redo")
            sess.undo_stack.append(sess.tree)
            sess.tree = sess.redo_stack.pop()
            return {"id": sid, "tree": sess.tree.to_json()}

    @app.get("/sessions/{sid}/export")
    def export(sid: str, format: str = "mm"):
        sess = _get(sid)
        with sess.lock:
            st = sess.tree.statement
            try:
                root = sess.tree.to_proof()
            except MMError as e:
                raise HTTPException(422, detail=str(e))
            if format == "mm":
                text = export_proof(db, "session", st.expr,
                                    list(st.e_hyps), [], root)
                return {"format": "mm", "text": text}
            if format == "jsonl":
                recs = records_from_tree(db, "session", root, st.hyp_texts)
                return {"format": "jsonl",
                        "text": "\n".join(r.to_json() for r in recs) + "\n"}
            raise HTTPException(422, detail=f"unknown format {format!r}")

    @app.post("/sessions/{sid}/search")
    def start_search(sid: str, body: SearchBody):
        sess = _get(sid)
        job = _Job()
        params = SearchParams(attempts=max(body.attempts, 1),
                              expansions=body.expansions,
                              max_expansions=body.max_expansions,
                              temperature=body.temperature, seed=body.seed)
        st = sess.tree.statement

        def work():
            try:
                res = run_search(db, st, policy, params, scorer=scorer,
                                 stop=job.cancelled.is_set)
                job.result = res.summary()
                job.status = "cancelled" if job.cancelled.is_set() else "done"
            except Exception as e:  # surfaced through the job, not the worker
                job.status = "error"
                job.result = {"error": str(e)}

        with store_lock:
            jobs[job.id] = job
        threading.Thread(target=work, daemon=True).start()
        return {"job_id": job.id}

    @app.get("/jobs/{jid}")
    def job_status(jid: str):
        job = jobs.get(jid)
        if job is None:
            raise HTTPException(404, detail=f"no job {jid}")
        return {"id": jid, "status": job.status, "result": job.result}

    @app.post("/jobs/{jid}/cancel")
    def job_cancel(jid: str):
        job = jobs.get(jid)
        if job is None:
            raise HTTPException(404, detail=f"no job {jid}")
        job.cancelled.set()
        return {"id": jid, "status": job.status}

    @app.get("/theorems")
    def theorems(query: str = "", limit: int = 20):
        q = " ".join(query.split())
        out = []
        for a in db.assertions:
            if a.typecode != db.provable_tc:
                continue
            text = a.statement_text()
            if q in text or q == a.label:
                out.append({"label": a.label, "statement": text,
                            "index": a.index, "kind": a.kind})
                if len(out) >= limit:
                    break
        return {"version": API_VERSION, "theorems": out}

    return app
