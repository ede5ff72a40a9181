import pytest
from fastapi.testclient import TestClient

from curvagons.service import create_app


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def new_session(client) -> str:
    r = client.post("/sessions")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok"
    return body["id"]


def build_heptagon_flower(client, sid):
    """One heptagon surrounded by seven hexagons."""
    hep = client.post(f"/sessions/{sid}/faces", json={"sides": 7}).json()["face"]
    hexes = []
    for i in range(7):
        r = client.post(f"/sessions/{sid}/faces", json={"sides": 6})
        hexes.append(r.json()["face"])
        r = client.post(f"/sessions/{sid}/glue",
                        json={"a": [hep, i], "b": [hexes[i], 0]})
        assert r.status_code == 200
    for i in range(7):
        j = (i + 1) % 7
        r = client.post(f"/sessions/{sid}/glue",
                        json={"a": [hexes[i], 5], "b": [hexes[j], 1]})
        assert r.status_code == 200
    return hep, hexes


def test_create_and_report(client):
    sid = new_session(client)
    r = client.get(f"/sessions/{sid}/report")
    assert r.status_code == 200
    assert r.json()["report"]["counts"] == {"vertices": 0, "edges": 0, "faces": 0}


def test_unknown_session_404(client):
    r = client.get("/sessions/deadbeef/report")
    assert r.status_code == 404
    body = r.json()
    assert body["status"] == "error"
    assert body["code"] == "unknown_session"


def test_heptagon_flower_excess(client):
    sid = new_session(client)
    build_heptagon_flower(client, sid)
    report = client.get(f"/sessions/{sid}/report").json()["report"]
    assert report["counts"]["faces"] == 8
    interior = [v for v in report["vertices"] if v["kind"] == "interior"]
    assert len(interior) == 7
    for v in interior:
        assert v["excess"]["display"] == "8 4/7°"
        assert v["defect"]["display"] == "-8 4/7°"


def test_glue_error_422_and_undo_stack_intact(client):
    sid = new_session(client)
    a = client.post(f"/sessions/{sid}/faces", json={"sides": 3}).json()["face"]
    b = client.post(f"/sessions/{sid}/faces", json={"sides": 3}).json()["face"]
    ok = client.post(f"/sessions/{sid}/glue", json={"a": [a, 0], "b": [b, 0]})
    assert ok.status_code == 200
    before = client.get(f"/sessions/{sid}/report").json()["report"]
    bad = client.post(f"/sessions/{sid}/glue", json={"a": [a, 0], "b": [b, 1]})
    assert bad.status_code == 422
    assert bad.json()["code"] == "already_glued"
    # the failed mutation must not consume an undo step: the next undo
    # reverts the successful glue (splitting its edge back into two)
    undone = client.post(f"/sessions/{sid}/undo").json()["report"]
    assert undone["counts"]["edges"] == before["counts"]["edges"] + 1


def test_undo_restores_previous_report(client):
    sid = new_session(client)
    build_heptagon_flower(client, sid)
    before = client.get(f"/sessions/{sid}/report").json()["report"]
    client.post(f"/sessions/{sid}/faces", json={"sides": 4})
    after = client.get(f"/sessions/{sid}/report").json()["report"]
    assert after != before
    restored = client.post(f"/sessions/{sid}/undo").json()["report"]
    assert restored == before


def test_spec_round_trip_reproduces_state(client):
    sid = new_session(client)
    build_heptagon_flower(client, sid)
    report = client.get(f"/sessions/{sid}/report").json()["report"]
    spec = client.get(f"/sessions/{sid}/spec").json()["spec"]
    sid2 = new_session(client)
    r = client.post(f"/sessions/{sid2}/spec", json={"spec": spec})
    assert r.status_code == 200
    assert client.get(f"/sessions/{sid2}/report").json()["report"] == report


def test_spec_parse_error_422(client):
    sid = new_session(client)
    r = client.post(f"/sessions/{sid}/spec", json={"spec": "nonsense here"})
    assert r.status_code == 422
    assert r.json()["status"] == "error"


def test_relax_returns_stats_and_frame(client):
    sid = new_session(client)
    build_heptagon_flower(client, sid)
    r = client.post(f"/sessions/{sid}/relax", json={"iters": 800})
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok"
    assert body["max_edge_residual"] < 0.05
    frame = client.get(f"/sessions/{sid}/embedding").json()["frame"]
    assert len(frame["faces"]) == 8
    assert all(len(p) == 3 for p in frame["positions"])
    assert len(frame["springs"]) > 0


def test_relax_disconnected_422(client):
    sid = new_session(client)
    client.post(f"/sessions/{sid}/faces", json={"sides": 3})
    client.post(f"/sessions/{sid}/faces", json={"sides": 3})
    r = client.post(f"/sessions/{sid}/relax", json={"iters": 10})
    assert r.status_code == 422


def test_websocket_receives_mutation_events(client):
    sid = new_session(client)
    with client.websocket_connect(f"/sessions/{sid}/live") as ws:
        client.post(f"/sessions/{sid}/faces", json={"sides": 6})
        doc = ws.receive_json()
        assert doc["event"] == "face-added"
        assert doc["report"]["counts"]["faces"] == 1
        client.post(f"/sessions/{sid}/undo")
        doc = ws.receive_json()
        assert doc["event"] == "undone"
        assert doc["report"]["counts"]["faces"] == 0


def test_websocket_unknown_session_closed(client):
    from starlette.websockets import WebSocketDisconnect

    with pytest.raises(WebSocketDisconnect) as exc:
        with client.websocket_connect("/sessions/nope/live") as ws:
            ws.receive_json()
    assert exc.value.code == 4404


def test_face_edge_length_fraction(client):
    sid = new_session(client)
    r = client.post(f"/sessions/{sid}/faces",
                    json={"sides": 4, "edge_length": "3/2"})
    assert r.status_code == 200
    spec = client.get(f"/sessions/{sid}/spec").json()["spec"]
    assert "3/2" in spec
