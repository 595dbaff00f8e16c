#!/usr/bin/env python3
"""Record real protocol responses for the viewer tests.

Drives the session store through the exact request sequences the scripted
UI tests replay, and writes {canonical-request-key: response} JSON.
Snapshot ids are content hashes, so the recording is reproducible.
"""

import json
from pathlib import Path

from hilbertvor.service.models import ProtocolRequest
from hilbertvor.service.session import SessionStore

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "protocol_fixtures.json"

SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]


def main() -> None:
    store = SessionStore()
    fixtures: dict[str, dict] = {}

    def call(request: str, payload: dict) -> dict:
        resp = store.dispatch(ProtocolRequest(request=request, payload=payload))
        body = resp.model_dump(exclude_none=True)
        key = request + "|" + json.dumps(payload, sort_keys=True, separators=(",", ":"))
        fixtures[key] = body
        return body

    # Flow A: empty square scene, insert the symmetric pair.
    a0 = call("load_scene", {"scene": {"polygon": SQUARE, "sites": []}})
    a1 = call(
        "insert_site",
        {"snapshot_id": a0["snapshot_id"], "site": {"id": "a", "pos": [0.25, 0.5]}},
    )
    a2 = call(
        "insert_site",
        {"snapshot_id": a1["snapshot_id"], "site": {"id": "b", "pos": [0.75, 0.5]}},
    )
    call("query_sectors", {"snapshot_id": a2["snapshot_id"], "a": "a", "b": "b"})
    call("query_ball", {"snapshot_id": a2["snapshot_id"], "site": "a", "radius": 0.5})
    call("query_ball", {"snapshot_id": a2["snapshot_id"], "site": "b", "radius": 0.5})
    call("query_bisector", {"snapshot_id": a2["snapshot_id"], "a": "a", "b": "b"})
    # clicking outside / duplicate position produce error responses
    call(
        "insert_site",
        {"snapshot_id": a2["snapshot_id"], "site": {"id": "c", "pos": [0.25, 0.5]}},
    )

    # Flow B: drag m across the vertical alignment with o.
    b0 = call(
        "load_scene",
        {
            "scene": {
                "polygon": SQUARE,
                "sites": [
                    {"id": "m", "pos": [0.3, 0.3]},
                    {"id": "o", "pos": [0.5, 0.7]},
                ],
            }
        },
    )
    sid = b0["snapshot_id"]
    for x in (0.35, 0.45, 0.55, 0.7):
        resp = call("move_site", {"snapshot_id": sid, "id": "m", "pos": [x, 0.3]})
        sid = resp["snapshot_id"]
    call("query_zregion", {"snapshot_id": sid, "a": "m", "b": "o"})

    # Flow C: hover readout over the degenerate vertical pair.
    c0 = call(
        "load_scene",
        {
            "scene": {
                "polygon": SQUARE,
                "sites": [
                    {"id": "a", "pos": [0.5, 0.3]},
                    {"id": "b", "pos": [0.5, 0.7]},
                ],
            }
        },
    )
    call("query_distance", {"point": [0.9, 0.5], "snapshot_id": c0["snapshot_id"]})
    call("query_distance", {"point": [0.5, 0.3], "snapshot_id": c0["snapshot_id"]})

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(fixtures, indent=1, sort_keys=True))
    print(f"wrote {OUT} ({len(fixtures)} fixtures)")


if __name__ == "__main__":
    main()
