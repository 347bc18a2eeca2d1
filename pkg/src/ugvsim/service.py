"""HTTP control plane over a live station: REST endpoints for command and
state, plus a WebSocket bridge carrying the exact wire-protocol messages for
clients that cannot open raw TCP (browsers)."""

from __future__ import annotations

import asyncio
from typing import Any, Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from . import __version__
from .server import StationServer
from .station import config_to_wire, telemetry_to_wire


class HealthResponse(BaseModel):
    status: str
    version: str
    sim_time: float


class CommandRequest(BaseModel):
    name: str


class AckResponse(BaseModel):
    seq: int


class PoseModel(BaseModel):
    x: float
    y: float
    theta: float


class SightingModel(BaseModel):
    bearing: float
    distance: float


class TelemetryModel(BaseModel):
    t: float
    pose: PoseModel
    relay_mask: int
    drive: list[str]
    battery_ah: float
    obstacle_led: bool
    searchlight: bool
    camera: list[SightingModel]
    noise_sigma: float


class MetricsModel(BaseModel):
    sent: int
    decoded: int
    dropped: int
    decode_errors: int


class StateResponse(BaseModel):
    sim_time: float
    last_command: Optional[str]
    pending_audio: int
    metrics: MetricsModel
    telemetry: Optional[TelemetryModel]  # latest frame as delivered downlink


def _telemetry_model(server: StationServer) -> Optional[TelemetryModel]:
    frame = server.latest_delivered
    if frame is None:
        return None
    wire = telemetry_to_wire(frame)
    wire.pop("type")
    return TelemetryModel(**wire)


def create_app(server: StationServer) -> FastAPI:
    app = FastAPI(title="ugvsim station", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(
            status="ok", version=__version__, sim_time=server.session.time
        )

    @app.get("/config")
    def config() -> dict[str, Any]:
        return config_to_wire(server.session.config)

    @app.get("/state", response_model=StateResponse)
    def state() -> StateResponse:
        snap = server.session.snapshot()
        return StateResponse(
            sim_time=snap.time,
            last_command=snap.last_command.value if snap.last_command else None,
            pending_audio=snap.pending_audio,
            metrics=MetricsModel(**vars(snap.metrics)),
            telemetry=_telemetry_model(server),
        )

    @app.get("/metrics", response_model=MetricsModel)
    def metrics() -> MetricsModel:
        return MetricsModel(**vars(server.session.metrics))

    @app.post("/command", response_model=AckResponse)
    def command(req: CommandRequest) -> AckResponse:
        reply = server.handle_message({"type": "command", "name": req.name})
        if reply is None or reply.get("type") != "ack":
            detail = reply.get("error", "rejected") if reply else "rejected"
            raise HTTPException(status_code=400, detail=detail)
        return AckResponse(seq=reply["seq"])

    @app.websocket("/ws")
    async def ws_bridge(ws: WebSocket) -> None:
        """Speaks the station wire protocol, one JSON message per WS frame."""
        await ws.accept()
        cid, queue = server.register_client()

        async def pump() -> None:
            while True:
                await ws.send_json(await queue.get())

        sender = asyncio.create_task(pump())
        try:
            while True:
                msg = await ws.receive_json()
                if not isinstance(msg, dict):
                    continue
                reply = server.handle_message(msg)
                if reply is not None:
                    queue.put_nowait(reply)
        except WebSocketDisconnect:
            pass
        finally:
            server.unregister_client(cid)
            sender.cancel()

    return app
