import math

import pytest
from fastapi.testclient import TestClient

from ugvsim.channel import ChannelConfig
from ugvsim.server import StationServer
from ugvsim.service import create_app
from ugvsim.station import Session, SessionConfig


@pytest.fixture
def server():
    config = SessionConfig(
        channel=ChannelConfig(drop_probability=0.0, snr_db=math.inf, seed=2)
    )
    return StationServer(Session(config), port=0)


@pytest.fixture
def client(server):
    return TestClient(create_app(server))


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert body["sim_time"] == 0.0


def test_config_endpoint(client):
    body = client.get("/config").json()
    assert body["type"] == "config"
    assert body["tick"] == 0.01
    assert body["vehicle"]["battery_capacity_ah"] == 7.0


def test_command_and_metrics(client, server):
    resp = client.post("/command", json={"name": "forward"})
    assert resp.status_code == 200
    assert resp.json() == {"seq": 1}
    assert client.get("/metrics").json()["sent"] == 1
    # drive engages once the sim advances past the pipeline latency
    for _ in range(30):
        server.session.tick()
    state = client.get("/state").json()
    assert state["last_command"] == "forward"
    assert state["metrics"]["decoded"] == 1


def test_rejects_unknown_command(client):
    resp = client.post("/command", json={"name": "fly"})
    assert resp.status_code == 400
    assert "fly" in resp.json()["detail"]


def test_state_before_any_telemetry(client):
    state = client.get("/state").json()
    assert state["telemetry"] is None
    assert state["pending_audio"] == 0


def test_state_reports_delivered_telemetry(client, server):
    for _ in range(10):
        frame = server.session.tick()
        if frame is not None:
            server.latest_delivered = frame
    state = client.get("/state").json()
    assert state["telemetry"] is not None
    assert state["telemetry"]["battery_ah"] == pytest.approx(7.0)
    assert state["telemetry"]["drive"] == ["off", "off"]


def test_websocket_bridge_speaks_wire_protocol(client, server):
    with client.websocket_connect("/ws") as ws:
        ws.send_json({"type": "config_get"})
        config = ws.receive_json()
        assert config["type"] == "config"
        ws.send_json({"type": "command", "name": "stop"})
        ack = ws.receive_json()
        assert ack == {"type": "ack", "seq": 1}
        # broadcast frames reach websocket clients like TCP ones
        server.broadcast({"type": "telemetry", "t": 0.5})
        assert ws.receive_json()["t"] == 0.5
