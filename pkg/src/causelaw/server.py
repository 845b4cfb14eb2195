"""HTTP service for expert-in-the-loop refinement and what-if queries.

The service loads a dataset and a consensus graph at startup, fits the
network, and exposes read endpoints plus per-session edge edits (accept,
reject, flip). Every number returned carries its supporting case count;
the browser UI performs no probability arithmetic of its own.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .arguments import NO_SUPPORT_TEXT, ranked_arguments
from .bayesnet import evidence_support, fit_cpts, query
from .consensus import ensure_dag
from .dataset import ConceptCatalog, load_matrix
from .errors import CauseLawError, ParameterError, ZeroEvidenceError
from .graphs import Dag, Pdag, WeightedDigraph, is_acyclic, read_graph


class ApiError(Exception):
    def __init__(self, status, code, message):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


@dataclass
class Session:
    session_id: str
    dag: Dag
    net: object
    edits: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


@dataclass
class ServerState:
    matrix: object
    catalog: ConceptCatalog
    base_graph: WeightedDigraph
    base_dag: Dag
    base_net: object
    session_dir: str | None = None
    sessions: dict = field(default_factory=dict)
    registry_lock: threading.Lock = field(default_factory=threading.Lock)


def build_state(data, graph, concepts=None, session_dir=None):
    catalog = ConceptCatalog.from_csv(concepts) if concepts else None
    matrix = load_matrix(data, concepts=catalog)
    loaded = read_graph(graph)
    if isinstance(loaded, Pdag):
        if loaded.undirected:
            raise ParameterError("consensus graph must not contain undirected edges")
        base_graph = WeightedDigraph(loaded.nodes, {e: 1 for e in loaded.directed})
    elif isinstance(loaded, Dag):
        base_graph = WeightedDigraph(loaded.nodes, {e: 1 for e in loaded.edges})
    else:
        base_graph = loaded
    base_dag, _ = ensure_dag(base_graph)
    base_net = fit_cpts(
        matrix,
        base_dag,
        source={"dataset": os.path.basename(str(data)), "fallback_rule": "uniform-0.5"},
    )
    if session_dir:
        os.makedirs(session_dir, exist_ok=True)
    return ServerState(
        matrix=matrix,
        catalog=matrix.catalog,
        base_graph=base_graph,
        base_dag=base_dag,
        base_net=base_net,
        session_dir=session_dir,
    )


def apply_edit(dag, action, u, v):
    """New DAG after one edit; raises ApiError on unknown edges and cycles."""
    if action not in ("accept", "reject", "flip"):
        raise ApiError(400, "bad_action", f"unknown action {action!r}")
    if not dag.has_edge(u, v):
        raise ApiError(404, "unknown_edge", f"edge {u}->{v} is not in the graph")
    if action == "accept":
        return dag, ()
    if action == "reject":
        return dag.with_edges(remove=[(u, v)]), (v,)
    edges = (set(dag.edges) - {(u, v)}) | {(v, u)}
    if not is_acyclic(dag.nodes, edges):
        raise ApiError(
            409, "cycle", f"flipping {u}->{v} would create a directed cycle"
        )
    return Dag(dag.nodes, edges), (u, v)


def replay_edits(state, edits):
    """Rebuild the session network from the base graph and an edit log."""
    dag = state.base_dag
    for edit in edits:
        dag, _ = apply_edit(dag, edit["action"], edit["from"], edit["to"])
    return dag, fit_cpts(state.matrix, dag, source=state.base_net.source)


def _cpt_document(net, node):
    cpt = net.cpts[node]
    return {
        "node": node,
        "parents": list(cpt.parents),
        "rows": [
            {
                "combo": list(r.combo),
                "p": [r.p[0], r.p[1]],
                "n": [r.n[0], r.n[1]],
                "total": r.total,
                "fallback": r.is_fallback,
            }
            for r in cpt.rows
        ],
    }


def _graph_document(state, dag):
    weights = state.base_graph.weights
    return {
        "nodes": [
            {"id": c.id, "name": c.name or c.id, "category": c.category}
            for c in state.catalog
        ],
        "edges": [
            {"from": u, "to": v, "weight": weights.get((u, v), weights.get((v, u), 1))}
            for u, v in sorted(dag.edges)
        ],
    }


class EdgeEdit(BaseModel):
    action: str
    from_: str = Field(alias="from")
    to: str

    model_config = {"populate_by_name": True}


class QueryBody(BaseModel):
    session_id: str | None = None
    evidence: dict[str, int] = Field(default_factory=dict)
    target: str


def create_app(state, ui_dir=None):
    app = FastAPI(title="causelaw", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message},
        )

    @app.exception_handler(CauseLawError)
    async def handle_domain_error(request: Request, exc: CauseLawError):
        return JSONResponse(
            status_code=400,
            content={"code": "bad_request", "message": str(exc)},
        )

    def session_or_base(session_id):
        if session_id is None:
            return None, state.base_dag, state.base_net
        session = state.sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return session, session.dag, session.net

    @app.get("/api/graph")
    def get_graph():
        return _graph_document(state, state.base_dag)

    @app.get("/api/cpt/{node}")
    def get_cpt(node: str, session_id: str | None = None):
        _, _, net = session_or_base(session_id)
        if node not in set(net.nodes):
            raise ApiError(404, "unknown_node", f"no concept {node!r}")
        return _cpt_document(net, node)

    @app.post("/api/session")
    def create_session():
        session = Session(
            session_id=uuid.uuid4().hex[:12],
            dag=state.base_dag,
            net=state.base_net,
        )
        with state.registry_lock:
            state.sessions[session.session_id] = session
        return {
            "session_id": session.session_id,
            "graph": _graph_document(state, session.dag),
            "edits": [],
        }

    @app.post("/api/session/{session_id}/edge")
    def edit_edge(session_id: str, edit: EdgeEdit):
        session, _, _ = session_or_base(session_id)
        with session.lock:
            dag, changed_nodes = apply_edit(
                session.dag, edit.action, edit.from_, edit.to
            )
            record = {"action": edit.action, "from": edit.from_, "to": edit.to}
            if changed_nodes:
                session.net = fit_cpts(state.matrix, dag, source=state.base_net.source)
                session.dag = dag
            session.edits.append(record)
            if state.session_dir:
                log_path = os.path.join(
                    state.session_dir, f"{session.session_id}.jsonl"
                )
                with open(log_path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record, sort_keys=True) + "\n")
            return {
                "graph": _graph_document(state, session.dag),
                "changed": [_cpt_document(session.net, n) for n in changed_nodes],
                "edits": len(session.edits),
            }

    @app.post("/api/query")
    def post_query(body: QueryBody):
        _, _, net = session_or_base(body.session_id)
        known = set(net.nodes)
        if body.target not in known:
            raise ApiError(404, "unknown_node", f"no concept {body.target!r}")
        for node, value in body.evidence.items():
            if node not in known:
                raise ApiError(404, "unknown_node", f"no concept {node!r}")
            if value not in (0, 1):
                raise ApiError(400, "bad_value", f"evidence for {node!r} must be 0 or 1")
        try:
            posterior = query(net, body.evidence, body.target)
        except ZeroEvidenceError:
            raise ApiError(400, "no_supporting_cases", NO_SUPPORT_TEXT)
        support = evidence_support(net, body.target, body.evidence)
        return {
            "target": body.target,
            "p": {"0": posterior[0], "1": posterior[1]},
            "support": {"total": support},
        }

    @app.get("/api/arguments")
    def get_arguments(target: str, max_evidence: int = 3, session_id: str | None = None):
        _, _, net = session_or_base(session_id)
        node, _, value = target.partition("=")
        if value not in ("0", "1") or node not in set(net.nodes):
            raise ApiError(400, "bad_target", "target must look like N15=0")
        reports = ranked_arguments(net, (node, int(value)), max_evidence, state.catalog)
        return {
            "target": target,
            "reports": [
                {
                    "evidence": r.evidence,
                    "p_with": r.p_with,
                    "p_baseline": r.p_baseline,
                    "delta": r.delta,
                    "supporting_total": r.supporting_total,
                    "sufficient": r.sufficient,
                    "narrative": r.narrative,
                }
                for r in reports
            ],
        }

    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
