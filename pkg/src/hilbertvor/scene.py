"""Scene and diagram-dump JSON formats.

Scene:  {"polygon": [[x, y], ...], "sites": [{"id": "a", "pos": [x, y]}, ...]}
Dump:   scene echo, per-site cells with polyline and per-edge provenance
        {pair, sector_edges, conic, k}, and the degeneracy list.

Serialization is deterministic: fixed field order, floats printed with 17
significant digits (lossless for 64-bit floats).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import InputError, InvalidPolygon, UnknownSite
from .geometry import ConvexPolygon, Point
from .voronoi import Site, VoronoiDiagram


@dataclass(frozen=True)
class Scene:
    polygon: ConvexPolygon
    sites: tuple[Site, ...]

    def site_by_id(self, site_id: str) -> Site:
        for s in self.sites:
            if s.id == site_id:
                return s
        raise UnknownSite(f"unknown site {site_id!r}")


def parse_scene(data) -> Scene:
    """Validate a scene dict (or JSON text)."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("scene must be a JSON object")
    try:
        polygon = ConvexPolygon([(float(x), float(y)) for x, y in data["polygon"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidPolygon(f"bad polygon field: {exc}") from exc
    sites = []
    seen = set()
    for entry in data.get("sites", []):
        try:
            sid = str(entry["id"])
            x, y = (float(v) for v in entry["pos"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad site entry {entry!r}: {exc}") from exc
        if sid in seen:
            raise InputError(f"duplicate site id {sid!r}")
        seen.add(sid)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InputError(f"non-finite site position for {sid!r}")
        sites.append(Site(sid, Point(x, y)))
    return Scene(polygon, tuple(sites))


def scene_to_jsonable(scene: Scene) -> dict:
    return {
        "polygon": [[v.x, v.y] for v in scene.polygon.vertices],
        "sites": [{"id": s.id, "pos": [s.pos.x, s.pos.y]} for s in scene.sites],
    }


def diagram_to_jsonable(scene: Scene, diagram: VoronoiDiagram) -> dict:
    """DiagramDump structure; cells sorted by site id."""
    cells = []
    for cell in sorted(diagram.cells, key=lambda c: c.site):
        edges = []
        for prov in cell.provenance:
            edges.append(
                {
                    "kind": prov.kind,
                    "pair": list(prov.pair) if prov.pair else None,
                    "domain_edge": prov.domain_edge,
                    "sector_edges": list(prov.sector_edges) if prov.sector_edges else None,
                    "conic": list(prov.conic) if prov.conic else None,
                    "k": prov.k,
                }
            )
        cells.append(
            {
                "site": cell.site,
                "polyline": [[p.x, p.y] for p in cell.boundary],
                "edges": edges,
            }
        )
    degeneracies = []
    for rep in diagram.degeneracies:
        degeneracies.append(
            {
                "pair": list(rep.pair),
                "vanishing_point": [rep.vanishing_point.x, rep.vanishing_point.y, rep.vanishing_point.w],
                "region": [[p.x, p.y] for p in rep.region.vertices],
                "tie_assignment": rep.tie_assignment,
            }
        )
    return {
        "scene": scene_to_jsonable(scene),
        "cells": cells,
        "degeneracies": degeneracies,
    }


def _format_float(x: float) -> str:
    if x != x or x in (math.inf, -math.inf):
        raise InputError("non-finite float in output")
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return format(x, ".17g")


def dump_json(obj, indent: int = 0) -> str:
    """Deterministic JSON text with 17-significant-digit floats.

    Dict insertion order is preserved; no whitespace variation.
    """
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f'{pad}  {json.dumps(k)}: {dump_json(v, indent + 2).lstrip()}' for k, v in obj.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        items = [dump_json(v, indent) for v in obj]
        flat = "[" + ", ".join(i.lstrip() for i in items) + "]"
        if len(flat) <= 100:
            return flat
        inner = [f"{pad}  {i.lstrip()}" for i in items]
        return "[\n" + ",\n".join(inner) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def parse_dump(text: str) -> dict:
    return json.loads(text)


def build_diagram(scene: Scene) -> VoronoiDiagram:
    """Diagram of all scene sites, inserted in listed order."""
    from .voronoi import insert_site, new_diagram

    d = new_diagram(scene.polygon)
    for s in scene.sites:
        d = insert_site(d, s)
    return d
