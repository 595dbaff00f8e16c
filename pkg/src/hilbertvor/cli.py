"""Batch command-line front end.

A thin client over the protocol service: commands build protocol requests
and dispatch them either to an in-process session (default) or to a running
server (--server URL).  Exit codes: 0 success, 2 input error, 3 geometric
degeneracy detected, 1 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .scene import dump_json, parse_scene
from .service.models import ProtocolRequest, ProtocolResponse
from .service.session import SessionStore
from .svg import render_dump_svg


class Client:
    """Dispatches protocol requests in-process or over HTTP."""

    def __init__(self, server: str | None = None):
        self.server = server.rstrip("/") if server else None
        self.store = None if server else SessionStore()

    def call(self, request: str, payload: dict) -> ProtocolResponse:
        req = ProtocolRequest(request=request, payload=payload)
        if self.store is not None:
            return self.store.dispatch(req)
        import httpx

        r = httpx.post(f"{self.server}/protocol", json=req.model_dump(), timeout=120.0)
        r.raise_for_status()
        return ProtocolResponse(**r.json())


def _fail(resp: ProtocolResponse) -> int:
    err = resp.error
    print(f"error: {err.message}", file=sys.stderr)
    if err.details:
        print(dump_json(err.details), file=sys.stderr)
    return err.code


def _load_scene(client: Client, path: str) -> tuple[ProtocolResponse, dict]:
    try:
        text = Path(path).read_text()
        raw = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read scene: {exc}", file=sys.stderr)
        raise SystemExit(2)
    resp = client.call("load_scene", {"scene": raw})
    return resp, raw


def cmd_distance(client: Client, args) -> int:
    resp, _ = _load_scene(client, args.scene)
    if resp.error:
        return _fail(resp)
    resp = client.call(
        "query_distance",
        {"snapshot_id": resp.snapshot_id, "from": args.from_id, "to": args.to_id},
    )
    if resp.error:
        return _fail(resp)
    print(f"{resp.result['value']:.12g}")
    return 0


def cmd_ball(client: Client, args) -> int:
    resp, _ = _load_scene(client, args.scene)
    if resp.error:
        return _fail(resp)
    resp = client.call(
        "query_ball",
        {"snapshot_id": resp.snapshot_id, "site": args.site, "radius": args.radius},
    )
    if resp.error:
        return _fail(resp)
    out = {
        "site": resp.result["site"],
        "radius": resp.result["radius"],
        "vertices": resp.result["vertices"],
    }
    print(dump_json(out))
    if args.verify:
        residual = resp.result["max_vertex_residual"]
        print(f"verify: max vertex residual {residual:.3e}")
        if residual > 1e-7:
            print("verify: FAILED (tolerance 1e-7)", file=sys.stderr)
            return 1
    return 0


def cmd_bisector(client: Client, args) -> int:
    resp, _ = _load_scene(client, args.scene)
    if resp.error:
        return _fail(resp)
    resp = client.call(
        "query_bisector", {"snapshot_id": resp.snapshot_id, "a": args.a, "b": args.b}
    )
    if resp.error:
        return _fail(resp)
    result = resp.result
    for i, piece in enumerate(result["pieces"]):
        A, B, C, D, E, F = piece["conic"]
        print(
            f"piece {i}: sector edges {tuple(piece['sector_edges'])} k={piece['k']:.12g} "
            f"conic {A:.12g}*x^2 + {B:.12g}*x*y + {C:.12g}*y^2 + "
            f"{D:.12g}*x + {E:.12g}*y + {F:.12g} = 0"
        )
    e0, e1 = result["endpoints"]
    print(f"endpoints: ({e0[0]:.12g}, {e0[1]:.12g}) ({e1[0]:.12g}, {e1[1]:.12g})")
    residual = result["max_equidistance_residual"]
    print(f"max equidistance residual: {residual:.3e}")
    if args.verify and residual > 1e-6:
        print("verify: FAILED (tolerance 1e-6)", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(dump_json(result) + "\n")
    return 0


def cmd_voronoi(client: Client, args) -> int:
    resp, raw_scene = _load_scene(client, args.scene)
    if resp.error:
        return _fail(resp)
    dump = resp.result["diagram"]
    if args.out:
        Path(args.out).write_text(dump_json(dump) + "\n")
        print(f"wrote {args.out}")
    if args.svg:
        Path(args.svg).write_text(render_dump_svg(dump))
        print(f"wrote {args.svg}")
    if args.grid_check:
        # Verification runs against the local kernel: rebuild and compare
        # cell labels with the brute-force nearest-site oracle.
        from .scene import build_diagram
        from .voronoi import grid_check

        diagram = build_diagram(parse_scene(raw_scene))
        mismatches, checked = grid_check(diagram, args.grid_check)
        print(f"grid-check: {mismatches} mismatches / {checked} points")
        if mismatches:
            return 1
    if not (args.out or args.svg or args.grid_check):
        print(dump_json(dump))
    return 0


def cmd_zregion(client: Client, args) -> int:
    resp, _ = _load_scene(client, args.scene)
    if resp.error:
        return _fail(resp)
    resp = client.call(
        "query_zregion", {"snapshot_id": resp.snapshot_id, "a": args.a, "b": args.b}
    )
    if resp.error:
        return _fail(resp)
    quad = resp.result["quad"]
    print(f"zregion: {len(quad)} vertices")
    for x, y in quad:
        print(f"  ({x:.12g}, {y:.12g})")
    return 0


def cmd_events(client: Client, args) -> int:
    resp, _ = _load_scene(client, args.scene)
    if resp.error:
        return _fail(resp)
    sid = resp.snapshot_id
    # Route the motion through move_site: place the site at the start, then
    # move it to the end; the second response reports crossing events.
    resp = client.call(
        "move_site", {"snapshot_id": sid, "id": args.moving_id, "pos": [args.x0, args.y0]}
    )
    if resp.error:
        return _fail(resp)
    resp = client.call(
        "move_site",
        {"snapshot_id": resp.snapshot_id, "id": args.moving_id, "pos": [args.x1, args.y1]},
    )
    if resp.error:
        return _fail(resp)
    events = [e for e in resp.result["events"] if e["other"] == args.other_id]
    print(f"events: {len(events)}")
    for e in events:
        vp = e["vanishing_point"]
        print(
            f"  u={e['u']:.12g} edges {tuple(e['edge_pair'])} "
            f"vanishing ({vp[0]:.6g}, {vp[1]:.6g}, {vp[2]:.6g})"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertvor",
        description="Hilbert-metric distances, balls, bisectors and Voronoi diagrams on convex polygons",
    )
    parser.add_argument("--server", help="URL of a running protocol service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scene(p):
        p.add_argument("--scene", required=True, help="scene JSON file")

    p = sub.add_parser("distance", help="Hilbert distance between two sites")
    add_scene(p)
    p.add_argument("from_id")
    p.add_argument("to_id")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("ball", help="metric ball polygon around a site")
    add_scene(p)
    p.add_argument("site")
    p.add_argument("radius", type=float)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("bisector", help="trace the bisector of two sites")
    add_scene(p)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bisector)

    p = sub.add_parser("voronoi", help="build the diagram; export JSON/SVG")
    add_scene(p)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--grid-check", type=int, metavar="N")
    p.set_defaults(func=cmd_voronoi)

    p = sub.add_parser("zregion", help="quadrilateral Z-region of two sites")
    add_scene(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_zregion)

    p = sub.add_parser("events", help="degeneracy crossings along a motion segment")
    add_scene(p)
    p.add_argument("moving_id")
    p.add_argument("x0", type=float)
    p.add_argument("y0", type=float)
    p.add_argument("x1", type=float)
    p.add_argument("y1", type=float)
    p.add_argument("other_id")
    p.set_defaults(func=cmd_events)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    client = Client(args.server)
    try:
        return args.func(client, args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
