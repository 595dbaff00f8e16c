import math

import pytest
from fastapi.testclient import TestClient

from hilbertvor.service.app import create_app

SQUARE_SCENE = {
    "polygon": [[0, 0], [1, 0], [1, 1], [0, 1]],
    "sites": [{"id": "a", "pos": [0.25, 0.5]}],
}


@pytest.fixture
def client():
    return TestClient(create_app())


def call(client, request, payload):
    r = client.post("/protocol", json={"version": 1, "request": request, "payload": payload})
    assert r.status_code == 200
    return r.json()


def load_square(client, sites=None):
    scene = dict(SQUARE_SCENE)
    if sites is not None:
        scene["sites"] = sites
    return call(client, "load_scene", {"scene": scene})


class TestProtocolBasics:
    def test_healthz(self, client):
        body = client.get("/healthz").json()
        assert body["status"] == "ok" and body["protocol_version"] == 1

    def test_load_scene_returns_diagram(self, client):
        resp = load_square(client)
        assert resp["snapshot_id"].startswith("s")
        assert len(resp["result"]["diagram"]["cells"]) == 1

    def test_insert_is_idempotent_per_snapshot(self, client):
        sid = load_square(client)["snapshot_id"]
        p = {"snapshot_id": sid, "site": {"id": "b", "pos": [0.75, 0.5]}}
        r1 = call(client, "insert_site", p)
        r2 = call(client, "insert_site", p)
        assert r1["snapshot_id"] == r2["snapshot_id"]
        assert r1 == r2

    def test_error_taxonomy(self, client):
        sid = load_square(client)["snapshot_id"]
        r = call(client, "query_distance", {"snapshot_id": sid, "from": "a", "to": "zz"})
        assert r["error"]["code"] == 2
        assert "unknown site" in r["error"]["message"]
        r = call(client, "load_scene", {"scene": {"polygon": [[0, 0], [1, 0]], "sites": []}})
        assert r["error"]["code"] == 2

    def test_unknown_snapshot(self, client):
        r = call(client, "full_diagram", {"snapshot_id": "nope"})
        assert r["error"]["code"] == 2


class TestQueries:
    def test_distance_by_ids(self, client):
        sid = load_square(client, sites=[{"id": "a", "pos": [0.25, 0.5]}, {"id": "b", "pos": [0.75, 0.5]}])["snapshot_id"]
        r = call(client, "query_distance", {"snapshot_id": sid, "from": "a", "to": "b"})
        assert r["result"]["value"] == pytest.approx(math.log(3), abs=1e-12)

    def test_distance_point_readout(self, client):
        sid = load_square(client, sites=[{"id": "a", "pos": [0.5, 0.3]}, {"id": "b", "pos": [0.5, 0.7]}])["snapshot_id"]
        r = call(client, "query_distance", {"snapshot_id": sid, "point": [0.9, 0.5]})
        per = {e["id"]: e for e in r["result"]["sites"]}
        assert per["a"]["distance"] == pytest.approx(math.log(3), abs=1e-12)
        assert per["b"]["distance"] == pytest.approx(math.log(3), abs=1e-12)
        assert per["a"]["chord_edges"] is not None

    def test_ball(self, client):
        sid = load_square(client, sites=[{"id": "c", "pos": [0.5, 0.5]}])["snapshot_id"]
        r = call(client, "query_ball", {"snapshot_id": sid, "site": "c", "radius": math.log(3)})
        verts = sorted((round(x, 9), round(y, 9)) for x, y in r["result"]["vertices"])
        assert verts == [(0.1, 0.1), (0.1, 0.9), (0.9, 0.1), (0.9, 0.9)]
        assert r["result"]["max_vertex_residual"] <= 1e-7

    def test_bisector_degenerate_error_carries_report(self, client):
        sid = load_square(client, sites=[{"id": "a", "pos": [0.5, 0.3]}, {"id": "b", "pos": [0.5, 0.7]}])["snapshot_id"]
        r = call(client, "query_bisector", {"snapshot_id": sid, "a": "a", "b": "b"})
        assert r["error"]["code"] == 3
        assert r["error"]["details"]["tie_assignment"] == "a"

    def test_sectors(self, client):
        sid = load_square(client, sites=[{"id": "a", "pos": [0.25, 0.5]}, {"id": "b", "pos": [0.75, 0.5]}])["snapshot_id"]
        r = call(client, "query_sectors", {"snapshot_id": sid, "a": "a", "b": "b"})
        sectors = r["result"]["sectors"]
        assert len(sectors) >= 8
        for sec in sectors:
            assert len(sec["edges"]) == 4

    def test_zregion(self, client):
        sid = load_square(client, sites=[{"id": "a", "pos": [0.31, 0.42]}, {"id": "b", "pos": [0.64, 0.57]}])["snapshot_id"]
        r = call(client, "query_zregion", {"snapshot_id": sid, "a": "a", "b": "b"})
        assert len(r["result"]["quad"]) == 4


class TestMutations:
    def test_insert_move_remove_chain(self, client):
        sid = load_square(client)["snapshot_id"]
        r = call(client, "insert_site", {"snapshot_id": sid, "site": {"id": "b", "pos": [0.75, 0.5]}})
        sid2 = r["snapshot_id"]
        assert len(r["result"]["diagram"]["cells"]) == 2
        r = call(client, "move_site", {"snapshot_id": sid2, "id": "b", "pos": [0.6, 0.6]})
        sid3 = r["snapshot_id"]
        assert sid3 not in (sid, sid2)
        r = call(client, "remove_site", {"snapshot_id": sid3, "id": "b"})
        assert len(r["result"]["diagram"]["cells"]) == 1

    def test_move_reports_crossing_events(self, client):
        sid = load_square(
            client, sites=[{"id": "m", "pos": [0.3, 0.3]}, {"id": "o", "pos": [0.5, 0.7]}]
        )["snapshot_id"]
        r = call(client, "move_site", {"snapshot_id": sid, "id": "m", "pos": [0.7, 0.3]})
        events = r["result"]["events"]
        assert len(events) == 1
        assert events[0]["u"] == pytest.approx(0.5, abs=1e-9)
        assert events[0]["other"] == "o"

    def test_snapshots_are_immutable(self, client):
        sid = load_square(client)["snapshot_id"]
        call(client, "insert_site", {"snapshot_id": sid, "site": {"id": "b", "pos": [0.75, 0.5]}})
        r = call(client, "full_diagram", {"snapshot_id": sid})
        assert len(r["result"]["diagram"]["cells"]) == 1
