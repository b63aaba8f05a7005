"""HTTP front end: a stateless FastAPI service wrapping the core package.

Run with `uvicorn crystalvor.service:app`.  Every endpoint takes a graph
inline or one of the bundled example names; computations are pure, so the
service is safe to scale out.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import ops
from .errors import CrystalvorError
from .examples import EXAMPLE_NAMES

app = FastAPI(
    title="crystalvor",
    description="Exact Voronoi cells of graph cycle lattices, crystal standard "
    "realizations, and hidden-tiling verification.",
    version="0.1.0",
)


class EdgeIn(BaseModel):
    id: str
    source: str
    target: str


class GraphIn(BaseModel):
    vertices: list[str]
    edges: list[EdgeIn]


class GraphRequest(BaseModel):
    graph: GraphIn | None = None
    example: str | None = Field(default=None, description=f"one of {EXAMPLE_NAMES}")


class CellRequest(GraphRequest):
    orient: str = Field(default="stored", pattern="^(stored|auto)$")
    max_circuits: int = 10**5
    max_orientations: int = 24


class CrystalRequest(CellRequest):
    base_vertex: str | None = None
    window: list[tuple[int, int]] | None = None
    max_trails: int = 10**6


class SubcoverRequest(GraphRequest):
    base_vertex: str | None = None
    vanishing: list[dict[str, int]] | list[list[int]] | None = None
    center: dict[str, str] | None = None


class VerifyResponse(BaseModel):
    ok: bool
    genus: int
    base_vertex: str
    r: int
    graph: dict
    segments: list[dict]


def _graph(req: GraphRequest):
    try:
        data = req.graph.model_dump() if req.graph is not None else None
        return ops.resolve_graph(data, req.example)
    except CrystalvorError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _guarded(fn):
    try:
        return fn()
    except CrystalvorError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


@app.get("/examples")
def examples() -> list[str]:
    return list(EXAMPLE_NAMES)


@app.post("/info")
def info(req: GraphRequest) -> dict:
    g, _ = _graph(req)
    return _guarded(lambda: ops.info_payload(g))


@app.post("/bridges")
def bridges(req: GraphRequest) -> dict:
    g, _ = _graph(req)
    return _guarded(lambda: ops.bridges_payload(g))


@app.post("/orient")
def orient(req: GraphRequest) -> dict:
    g, _ = _graph(req)
    return _guarded(lambda: ops.orient_payload(g))


@app.post("/cycles")
def cycles(req: CellRequest) -> dict:
    g, _ = _graph(req)
    return _guarded(lambda: ops.cycles_payload(g, req.max_circuits))


@app.post("/cell")
def cell(req: CellRequest) -> dict:
    g, _ = _graph(req)

    def go():
        oriented = ops.apply_orientation_mode(g, req.orient)
        payload, _ = ops.cell_payload(oriented, req.max_circuits, req.max_orientations)
        return payload

    return _guarded(go)


@app.post("/crystal")
def crystal(req: CrystalRequest) -> dict:
    g, preset = _graph(req)

    def go():
        oriented = ops.apply_orientation_mode(g, req.orient)
        base = req.base_vertex or (preset.base_vertex if preset else None)
        payload, _, _ = ops.crystal_payload(
            oriented, base, req.window, req.max_circuits, req.max_orientations, req.max_trails
        )
        return payload

    return _guarded(go)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: CellRequest) -> VerifyResponse:
    g, _ = _graph(req)

    def go():
        payload, _ = ops.verify_payload(
            g,
            circuit_guard=req.max_circuits,
            orientation_guard=req.max_orientations,
        )
        return VerifyResponse(**payload)

    return _guarded(go)


@app.post("/subcover")
def subcover(req: SubcoverRequest) -> dict:
    g, preset = _graph(req)

    def go():
        payload, _ = ops.subcover_payload(
            g, preset, req.vanishing, req.center, req.base_vertex
        )
        return payload

    return _guarded(go)
