"""HTTP JSON API over the workbench; the verifier UI is one client."""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from ..analytics import bipartite_to_dot, bipartite_to_graphml, bipartite_to_json
from ..bfstore import BfError, StaleAssignment, UnknownBf
from ..checker import BypassCategory, InvalidTransition, OracleUnavailable
from ..corpus import AlreadySplit, CorpusError, ItemNotFound, PartitionMismatch
from ..oracle.transport import ReplayMiss, TransportError
from .serialize import entailment_to_json
from .workbench import (
    NotEligible,
    RunNotFound,
    RunRecord,
    Workbench,
    WorkbenchError,
    record_to_json,
)


class SplitRequest(BaseModel):
    parts: list[str] = Field(min_length=2)
    partition: bool = False


class BfCreateRequest(BaseModel):
    text: str
    key_terms: list[str] = []
    origin_item: str | None = None


class AssignRequest(BaseModel):
    bf_ids: list[str]
    base_version: int | None = None


class RunRequest(BaseModel):
    bf_version: int = 0
    n_runs: int = 10
    equality_mode: str = "canonical"


class BypassRequest(BaseModel):
    category: str
    note: str = ""


class AcceptRequest(BaseModel):
    run_id: str


def _run_payload(record: RunRecord) -> dict:
    return record_to_json(record)


def create_app(workbench: Workbench) -> FastAPI:
    app = FastAPI(title="kgworkbench", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(Exception)
    async def domain_errors(request: Request, exc: Exception):
        status = 500
        if isinstance(exc, (ItemNotFound, RunNotFound)):
            status = 404
        elif isinstance(exc, StaleAssignment):
            status = 409
        elif isinstance(
            exc,
            (
                AlreadySplit,
                PartitionMismatch,
                CorpusError,
                BfError,
                UnknownBf,
                InvalidTransition,
                NotEligible,
                WorkbenchError,
                ValueError,
                KeyError,
            ),
        ):
            status = 400
        elif isinstance(exc, (ReplayMiss, TransportError, OracleUnavailable)):
            status = 503
        from fastapi.responses import JSONResponse

        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/items")
    def list_items(chapter: str | None = None):
        return {
            "items": [
                workbench.item_payload(item)
                for item in workbench.corpus.items(chapter)
            ]
        }

    @app.get("/items/{item_id}")
    def get_item(item_id: str):
        payload = workbench.item_payload(workbench.corpus.get(item_id))
        payload["runs"] = [
            row for row in workbench.runs_index() if row["item_id"] == item_id
        ]
        return payload

    @app.post("/items/{item_id}/split")
    def split_item(item_id: str, body: SplitRequest):
        children = workbench.split_item(item_id, body.parts, body.partition)
        return {"children": [workbench.item_payload(c) for c in children]}

    @app.get("/bfs")
    def list_bfs():
        return {
            "facts": [
                {
                    "id": f.id,
                    "text": f.text,
                    "key_terms": list(f.key_terms),
                    "created_seq": f.created_seq,
                    "origin_item": f.origin_item,
                }
                for f in workbench.bfs.all()
            ]
        }

    @app.post("/bfs")
    def add_bf(body: BfCreateRequest):
        fact = workbench.add_bf(body.text, body.key_terms, body.origin_item)
        return {
            "id": fact.id,
            "text": fact.text,
            "key_terms": list(fact.key_terms),
            "created_seq": fact.created_seq,
            "origin_item": fact.origin_item,
        }

    @app.get("/items/{item_id}/bf-suggestions")
    def suggest_bfs(item_id: str):
        item = workbench.corpus.get(item_id)
        return {
            "suggestions": [
                {"id": f.id, "text": f.text, "key_terms": list(f.key_terms)}
                for f in workbench.bfs.suggest(item)
            ]
        }

    @app.post("/items/{item_id}/assign-bfs")
    def assign_bfs(item_id: str, body: AssignRequest):
        assignment, warnings = workbench.assign_bfs(
            item_id, body.bf_ids, body.base_version
        )
        return {
            "item_id": assignment.item_id,
            "bf_ids": list(assignment.bf_ids),
            "version": assignment.version,
            "warnings": warnings,
        }

    @app.post("/items/{item_id}/runs")
    def start_run(item_id: str, body: RunRequest):
        record = workbench.execute_run(
            item_id,
            bf_version=body.bf_version,
            n_runs=body.n_runs,
            equality_mode=body.equality_mode,
        )
        return _run_payload(record)

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        return _run_payload(workbench.get_run(run_id))

    @app.post("/runs/{run_id}/facts/{ordinal}/bypass")
    def bypass_fact(run_id: str, ordinal: int, body: BypassRequest):
        try:
            category = BypassCategory(body.category)
        except ValueError:
            raise HTTPException(
                status_code=400,
                detail=f"unknown category {body.category!r}; expected one of "
                + ", ".join(c.value for c in BypassCategory),
            )
        record = workbench.bypass_fact(run_id, ordinal, category, body.note)
        return _run_payload(record)

    @app.post("/items/{item_id}/accept")
    def accept_item(item_id: str, body: AcceptRequest):
        return workbench.accept_item(item_id, body.run_id)

    @app.get("/metrics/compare")
    def compare(item: str, run_a: str, run_b: str):
        return workbench.compare_runs(item, run_a, run_b)

    @app.get("/graph/merged.ttl", response_class=PlainTextResponse)
    def merged_graph():
        return workbench.merged_turtle()

    @app.get("/graph/bipartite")
    def bipartite_graph(
        request: Request,
        scenario: str = Query(default="bfa"),
        min: int = Query(default=2, ge=1),
        format: str | None = None,
    ):
        graph = workbench.bipartite_graph(scenario, min_paragraphs=min)
        accept = request.headers.get("accept", "")
        fmt = format or (
            "dot"
            if "text/vnd.graphviz" in accept
            else "graphml"
            if "graphml" in accept
            else "json"
        )
        if fmt == "dot":
            return PlainTextResponse(
                bipartite_to_dot(graph), media_type="text/vnd.graphviz"
            )
        if fmt == "graphml":
            return Response(
                content=bipartite_to_graphml(graph),
                media_type="application/graphml+xml",
            )
        if fmt == "json":
            return bipartite_to_json(graph)
        raise HTTPException(status_code=400, detail=f"unknown format {fmt!r}")

    return app


def serve(workbench: Workbench, host: str = "127.0.0.1", port: int = 8080,
          ui_dir: str | None = None) -> None:
    import uvicorn

    app = create_app(workbench)
    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port)
