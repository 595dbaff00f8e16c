"""Session store and protocol dispatch.

Snapshots are immutable (scene, diagram) pairs keyed by a deterministic id:
the hash of the parent snapshot and the canonical request body.  Replaying a
request against the same snapshot therefore returns the same new snapshot id
and the memoized response.
"""

from __future__ import annotations

import hashlib
import json
from typing import NamedTuple

from ..bisector import bisector_residuals, trace_bisector
from ..errors import DegeneracyError, HilbertError, InputError
from ..geometry import Point, Segment
from ..metric import _chord_edges, hilbert_ball, hilbert_distance, sector_decomposition
from ..scene import Scene, build_diagram, diagram_to_jsonable, parse_scene, scene_to_jsonable
from ..voronoi import (
    Site,
    VoronoiDiagram,
    crossing_events,
    detect_degenerate_pair,
    insert_site,
    move_site,
    remove_site,
    z_region,
)
from .models import PROTOCOL_VERSION, ProtocolError, ProtocolRequest, ProtocolResponse


class Snapshot(NamedTuple):
    scene: Scene
    diagram: VoronoiDiagram


def _snapshot_id(parent: str, request: str, payload: dict) -> str:
    body = json.dumps([parent, request, payload], sort_keys=True, default=str)
    return "s" + hashlib.sha1(body.encode()).hexdigest()[:12]


class SessionStore:
    def __init__(self) -> None:
        self._snapshots: dict[str, Snapshot] = {}
        self._memo: dict[str, ProtocolResponse] = {}

    # -- plumbing ---------------------------------------------------------

    def snapshot(self, snapshot_id: str) -> Snapshot:
        try:
            return self._snapshots[snapshot_id]
        except KeyError:
            raise InputError(f"unknown snapshot {snapshot_id!r}") from None

    def _store(self, sid: str, snap: Snapshot) -> None:
        self._snapshots[sid] = snap

    def dispatch(self, req: ProtocolRequest) -> ProtocolResponse:
        key = json.dumps([req.request, req.payload], sort_keys=True, default=str)
        if key in self._memo:
            return self._memo[key]
        try:
            sid, result = self._handle(req.request, dict(req.payload))
            resp = ProtocolResponse(
                version=PROTOCOL_VERSION, request=req.request, snapshot_id=sid, result=result
            )
        except DegeneracyError as exc:
            resp = ProtocolResponse(
                version=PROTOCOL_VERSION,
                request=req.request,
                snapshot_id=req.payload.get("snapshot_id"),
                error=ProtocolError(code=3, message=str(exc), details=_degeneracy_details(exc)),
            )
        except HilbertError as exc:
            resp = ProtocolResponse(
                version=PROTOCOL_VERSION,
                request=req.request,
                snapshot_id=req.payload.get("snapshot_id"),
                error=ProtocolError(code=2, message=str(exc)),
            )
        if resp.error is None:
            self._memo[key] = resp
        return resp

    # -- handlers ---------------------------------------------------------

    def _handle(self, request: str, payload: dict) -> tuple[str | None, dict]:
        handler = getattr(self, f"_op_{request}", None)
        if handler is None:
            raise InputError(f"unknown request {request!r}")
        return handler(payload)

    def _op_load_scene(self, payload: dict):
        scene = parse_scene(payload.get("scene", {}))
        diagram = build_diagram(scene)
        sid = _snapshot_id("", "load_scene", scene_to_jsonable(scene))
        self._store(sid, Snapshot(scene, diagram))
        return sid, {"diagram": diagram_to_jsonable(scene, diagram)}

    def _op_insert_site(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        site = payload.get("site", {})
        new_site = Site(str(site.get("id")), Point(*map(float, site.get("pos", ()))))
        diagram = insert_site(snap.diagram, new_site)
        scene = Scene(snap.scene.polygon, tuple(list(snap.scene.sites) + [new_site]))
        sid = _snapshot_id(payload["snapshot_id"], "insert_site", site)
        self._store(sid, Snapshot(scene, diagram))
        return sid, {"diagram": diagram_to_jsonable(scene, diagram)}

    def _op_move_site(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        site_id = str(payload.get("id"))
        new_pos = Point(*map(float, payload.get("pos", ())))
        old = snap.diagram.site_by_id(site_id)
        diagram = move_site(snap.diagram, site_id, new_pos)
        events = []
        motion = Segment(old.pos, new_pos)
        if motion.a != motion.b:
            for other in snap.scene.sites:
                if other.id == site_id:
                    continue
                for ev in crossing_events(snap.scene.polygon, motion, other.pos):
                    events.append(
                        {
                            "u": ev.u,
                            "other": other.id,
                            "vanishing_point": list(ev.vanishing_point),
                            "edge_pair": list(ev.edge_pair),
                        }
                    )
        events.sort(key=lambda e: (e["u"], e["other"]))
        scene = Scene(
            snap.scene.polygon,
            tuple(Site(s.id, new_pos if s.id == site_id else s.pos) for s in snap.scene.sites),
        )
        sid = _snapshot_id(payload["snapshot_id"], "move_site", {"id": site_id, "pos": list(new_pos)})
        self._store(sid, Snapshot(scene, diagram))
        return sid, {"diagram": diagram_to_jsonable(scene, diagram), "events": events}

    def _op_remove_site(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        site_id = str(payload.get("id"))
        diagram = remove_site(snap.diagram, site_id)
        scene = Scene(snap.scene.polygon, tuple(s for s in snap.scene.sites if s.id != site_id))
        sid = _snapshot_id(payload["snapshot_id"], "remove_site", {"id": site_id})
        self._store(sid, Snapshot(scene, diagram))
        return sid, {"diagram": diagram_to_jsonable(scene, diagram)}

    def _op_query_distance(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        omega = snap.scene.polygon
        if "point" in payload and payload["point"] is not None:
            q = Point(*map(float, payload["point"]))
            per_site = []
            for s in sorted(snap.scene.sites, key=lambda s: s.id):
                d = hilbert_distance(omega, q, s.pos)
                if q == s.pos:
                    edges = None
                else:
                    _, eb, _, ef = _chord_edges(omega, s.pos, q)
                    edges = [eb, ef]
                per_site.append({"id": s.id, "distance": d, "chord_edges": edges})
            nearest = min(per_site, key=lambda e: (e["distance"], e["id"]))["id"] if per_site else None
            return payload["snapshot_id"], {"point": list(q), "sites": per_site, "nearest": nearest}
        a = snap.scene.site_by_id(str(payload.get("from")))
        b = snap.scene.site_by_id(str(payload.get("to")))
        value = hilbert_distance(omega, a.pos, b.pos)
        return payload["snapshot_id"], {"from": a.id, "to": b.id, "value": value}

    def _op_query_ball(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        site = snap.scene.site_by_id(str(payload.get("site")))
        radius = float(payload.get("radius", 0.0))
        ball = hilbert_ball(snap.scene.polygon, site.pos, radius)
        residuals = [
            abs(hilbert_distance(snap.scene.polygon, site.pos, v) - radius)
            for v in ball.boundary.vertices
        ]
        return payload["snapshot_id"], {
            "site": site.id,
            "radius": radius,
            "vertices": [[v.x, v.y] for v in ball.boundary.vertices],
            "max_vertex_residual": max(residuals),
        }

    def _op_query_bisector(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        omega = snap.scene.polygon
        a = snap.scene.site_by_id(str(payload.get("a")))
        b = snap.scene.site_by_id(str(payload.get("b")))
        pa, pb = (a, b) if a.id <= b.id else (b, a)
        rep = detect_degenerate_pair(omega, pa.pos, pb.pos, ids=(pa.id, pb.id))
        if rep is not None:
            from ..errors import DegeneratePair

            exc = DegeneratePair(
                f"bisector of ({pa.id},{pb.id}) contains a two-dimensional region"
            )
            exc.report = rep  # consumed by error details
            raise exc
        curve = trace_bisector(omega, pa.pos, pb.pos)
        res = bisector_residuals(omega, pa.pos, pb.pos, curve)
        pieces = []
        for piece in curve.pieces:
            pieces.append(
                {
                    "sector_edges": list(piece.sector.edges),
                    "conic": list(piece.conic.as_tuple()),
                    "k": piece.conic.k,
                    "polyline": [[p.x, p.y] for p in piece.polyline],
                    "on_spoke": piece.on_spoke,
                }
            )
        return payload["snapshot_id"], {
            "pair": [pa.id, pb.id],
            "pieces": pieces,
            "endpoints": [[p.x, p.y] for p in curve.endpoints],
            "max_equidistance_residual": float(res.max()) if len(res) else 0.0,
        }

    def _op_query_zregion(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        a = snap.scene.site_by_id(str(payload.get("a")))
        b = snap.scene.site_by_id(str(payload.get("b")))
        z = z_region(snap.scene.polygon, a.pos, b.pos, pair=(a.id, b.id))
        return payload["snapshot_id"], {
            "pair": list(z.pair),
            "quad": [[p.x, p.y] for p in z.quad.vertices],
        }

    def _op_query_sectors(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        a = snap.scene.site_by_id(str(payload.get("a")))
        b = snap.scene.site_by_id(str(payload.get("b")))
        sectors = sector_decomposition(snap.scene.polygon, a.pos, b.pos)
        return payload["snapshot_id"], {
            "pair": [a.id, b.id],
            "sectors": [
                {"polygon": [[p.x, p.y] for p in sec.region], "edges": list(sec.edges)}
                for sec in sectors
            ],
        }

    def _op_full_diagram(self, payload: dict):
        snap = self.snapshot(str(payload.get("snapshot_id")))
        return payload["snapshot_id"], {"diagram": diagram_to_jsonable(snap.scene, snap.diagram)}


def _degeneracy_details(exc: Exception) -> dict | None:
    rep = getattr(exc, "report", None)
    if rep is None:
        return None
    return {
        "pair": list(rep.pair),
        "vanishing_point": list(rep.vanishing_point),
        "region": [[p.x, p.y] for p in rep.region.vertices],
        "tie_assignment": rep.tie_assignment,
    }
