"""JSON / OBJ / CSV serialization with byte-stable output.

Rationals serialize as "p/q" (positive denominator, lowest terms) or a bare
integer string.  Floating point appears only in the OBJ exporter, printed to
12 significant digits in an orthonormal frame obtained by exact
Gram-Schmidt with the square roots taken only at print time.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from fractions import Fraction

from . import linalg, polytope
from .cell import VoronoiCell
from .crystal import Segment, VerificationReport
from .cycles import ElementaryCycle
from .errors import GraphFormatError
from .graphs import MultiGraph
from .homology import Chain, CycleBasis
from .subcover import LatticeCell, SubcoverReport
from .tiling import SegmentCheck


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def frac_parse(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphFormatError(f"bad rational {s!r}: {exc}") from None


def chain_json(g: MultiGraph, chain: Chain) -> dict:
    return {e.id: frac_str(c) for e, c in zip(g.edges, chain)}


def chain_parse(g: MultiGraph, data: dict) -> Chain:
    out = [Fraction(0)] * g.n_edges
    for eid, val in data.items():
        out[g.edge_index(eid)] = frac_parse(val)
    return tuple(out)


def int_chain_json(g: MultiGraph, chain) -> dict:
    """Sparse {edge: coefficient} map; integer entries stay JSON numbers."""
    out = {}
    for e, c in zip(g.edges, chain):
        if c:
            f = Fraction(c)
            out[e.id] = int(f) if f.denominator == 1 else frac_str(f)
    return out


def cycle_json(c: ElementaryCycle, g: MultiGraph) -> dict:
    return {
        "coefficients": int_chain_json(g, c.chain),
        "plus": list(c.plus),
        "zero": list(c.zero),
        "minus": list(c.minus),
    }


def basis_json(b: CycleBasis) -> dict:
    return {
        "tree": list(b.tree),
        "chords": list(b.chords),
        "cycles": [int_chain_json(b.graph, c) for c in b.cycles],
        "gram": [[frac_str(x) for x in row] for row in b.gram],
    }


def cell_json(cell: VoronoiCell) -> dict:
    g = cell.graph
    return {
        "graph": g.as_dict(),
        "genus": cell.dim,
        "center": chain_json(g, cell.center),
        "halfspaces": [
            {"normal": int_chain_json(g, h.cycle.chain), "offset": h.offset}
            for h in cell.halfspaces
        ],
        "vertices": [
            {
                "point": chain_json(g, v.point),
                "q_set": list(v.q_set),
                "orientation": v.orientation.as_dict(g),
            }
            for v in cell.vertices
        ],
    }


def cell_parse(data: dict):
    """Re-read an exported cell: graph, halfspace and vertex data, exact."""
    from .graphs import graph_from_dict

    g = graph_from_dict(data["graph"])
    halfspaces = [
        (chain_parse(g, h["normal"]), Fraction(h["offset"])) for h in data["halfspaces"]
    ]
    vertices = [chain_parse(g, v["point"]) for v in data["vertices"]]
    center = chain_parse(g, data["center"])
    return g, halfspaces, vertices, center


def segment_json(g: MultiGraph, s: Segment) -> dict:
    out = {"edge": s.edge, "a": chain_json(g, s.a), "b": chain_json(g, s.b)}
    if s.translate is not None:
        out["translate"] = list(s.translate)
    return out


def check_json(g: MultiGraph, c: SegmentCheck) -> dict:
    out = {
        "edge": c.edge,
        "translate": list(c.translate),
        "a": chain_json(g, c.a),
        "b": chain_json(g, c.b),
    }
    if c.ok:
        out["witness_cycle"] = int_chain_json(g, c.witness)
        out["face_dim"] = c.face_dim
    else:
        out["violation"] = "clip midpoint lies in the open cell"
    return out


def report_json(rep: VerificationReport) -> dict:
    g = rep.graph
    return {
        "ok": rep.ok,
        "genus": rep.genus,
        "base_vertex": rep.base_vertex,
        "r": rep.r,
        "graph": g.as_dict(),
        "segments": [check_json(g, c) for c in rep.checks],
    }


def lattice_cell_json(g: MultiGraph, cell: LatticeCell) -> dict:
    return {
        "rank": cell.dim,
        "center": chain_json(g, cell.center),
        "lattice": [chain_json(g, v) for v in cell.lattice],
        "halfspaces": [
            {"normal": chain_json(g, n), "offset": frac_str(o)} for n, o in cell.halfspaces
        ],
        "vertices": [chain_json(g, v) for v in cell.vertices],
    }


def subcover_report_json(g: MultiGraph, rep: SubcoverReport) -> dict:
    return {
        "ok": rep.ok,
        "dim": rep.dim,
        "base_vertex": rep.base_vertex,
        "r": rep.r,
        "lattices": {
            "lambda_cap": [chain_json(g, v) for v in rep.triple.lambda_cap],
            "pi_hz": [chain_json(g, v) for v in rep.triple.pi_hz],
            "pi_lambda": [chain_json(g, v) for v in rep.triple.pi_lambda],
            "index_hz_over_cap": rep.triple.index_hz_over_cap,
            "index_lambda_over_hz": rep.triple.index_lambda_over_hz,
            "dual_unimodular": rep.triple.dual_unimodular,
        },
        "cell": lattice_cell_json(g, rep.cell),
        "segments": [check_json(g, c) for c in rep.checks],
    }


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, content: str) -> None:
    """Write through a temp file and rename, so output appears atomically."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".crystalvor-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# geometry exports


def _orthonormal_frame(vectors) -> list[tuple[Chain, Fraction]]:
    """Exact Gram-Schmidt: orthogonal chains with their squared norms."""
    frame = []
    for v in vectors:
        w = tuple(map(Fraction, v))
        for o, nsq in frame:
            coef = Fraction(linalg.vdot(w, o)) / nsq
            w = linalg.vsub(w, linalg.vscale(coef, o))
        nsq = Fraction(linalg.vdot(w, w))
        if nsq:
            frame.append((w, nsq))
    return frame


def _frame_coords(frame, x) -> tuple[float, ...]:
    out = []
    for o, nsq in frame:
        t = Fraction(linalg.vdot(x, o))
        out.append(float(t) / math.sqrt(float(nsq)) if t else 0.0)
    while len(out) < 3:
        out.append(0.0)
    return tuple(out)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _polygon_order(halfspaces, vertices, face: frozenset) -> list[int]:
    """Walk a 2-face boundary through its edges; exact and deterministic."""
    edges = polytope._subfaces(halfspaces, vertices, face, 2)
    adj: dict[int, list[int]] = {}
    for e in edges:
        a, b = sorted(e)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj)
    order = [start]
    prev = None
    cur = start
    while True:
        nxts = [w for w in sorted(adj[cur]) if w != prev]
        nxt = nxts[0]
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def export_obj(
    cell: VoronoiCell | None = None,
    segments: list[Segment] | None = None,
    lattice_cell: LatticeCell | None = None,
    frame_vectors=None,
) -> str:
    """Wavefront OBJ: triangulated cell facets plus crystal polylines.

    Cells of dimension up to 3 only; higher ranks have no sensible OBJ
    embedding and are rejected.
    """
    dim = None
    hs_rows = []
    cell_pts = []
    if cell is not None:
        frame_vectors = frame_vectors or cell.basis.cycles
        dim = cell.dim
        hs_rows = cell.halfspace_rows()
        cell_pts = [v.point for v in cell.vertices]
    elif lattice_cell is not None:
        frame_vectors = frame_vectors or lattice_cell.lattice
        dim = lattice_cell.dim
        hs_rows = list(lattice_cell.halfspaces)
        cell_pts = list(lattice_cell.vertices)
    elif not segments:
        return "# empty geometry\n"

    if frame_vectors is None:
        # no cell and no explicit frame: fall back to the segment directions
        frame_vectors = [linalg.vsub(s.b, s.a) for s in segments]
    frame = _orthonormal_frame(frame_vectors)
    if len(frame) > 3:
        raise GraphFormatError("OBJ export supports dimension <= 3")

    index: dict[Chain, int] = {}
    lines_v: list[str] = []

    def vid(p: Chain) -> int:
        got = index.get(p)
        if got is None:
            got = len(index) + 1
            index[p] = got
            xyz = _frame_coords(frame, p)
            lines_v.append(f"v {_fmt(xyz[0])} {_fmt(xyz[1])} {_fmt(xyz[2])}")
        return got

    body: list[str] = []
    if cell_pts:
        ids = [vid(p) for p in cell_pts]
        if dim == 3:
            body.append("g cell")
            all_face = frozenset(range(len(cell_pts)))
            for facet in polytope._subfaces(hs_rows, cell_pts, all_face, 3):
                ring = _polygon_order(hs_rows, cell_pts, facet)
                for i in range(1, len(ring) - 1):
                    body.append(
                        f"f {ids[ring[0]]} {ids[ring[i]]} {ids[ring[i + 1]]}"
                    )
        elif dim == 2:
            body.append("g cell")
            ring = _polygon_order(hs_rows, cell_pts, frozenset(range(len(cell_pts))))
            for i in range(len(ring)):
                body.append(f"l {ids[ring[i]]} {ids[ring[(i + 1) % len(ring)]]}")
        else:
            body.append("g cell")
            for i in range(len(ids) - 1):
                body.append(f"l {ids[i]} {ids[i + 1]}")

    if segments:
        body.append("g crystal")
        for s in segments:
            body.append(f"l {vid(s.a)} {vid(s.b)}")

    out = ["# crystalvor geometry"]
    out.extend(lines_v)
    out.extend(body)
    return "\n".join(out) + "\n"


def export_csv(g: MultiGraph, segments: list[Segment]) -> str:
    """Segment endpoints as exact rationals in edge-chain coordinates."""
    cols = [e.id for e in g.edges]
    header = ["edge", "translate"] + [f"a:{c}" for c in cols] + [f"b:{c}" for c in cols]
    rows = [",".join(header)]
    for s in segments:
        translate = "" if s.translate is None else ";".join(map(str, s.translate))
        row = [s.edge, translate]
        row.extend(frac_str(c) for c in s.a)
        row.extend(frac_str(c) for c in s.b)
        rows.append(",".join(row))
    return "\n".join(rows) + "\n"
