"""Live station service: real-time tick loop, TCP newline-delimited JSON wire,
and an optional HTTP/WebSocket control plane (see service.py).

One asyncio loop owns everything, so the session is never touched from two
threads: client handlers call into it between ticks, and every connected
client (TCP or WebSocket) gets its own outbound queue fed by broadcast.
"""

from __future__ import annotations

import asyncio
import json
import logging
from itertools import count
from typing import Any, Optional

from .commands import parse_command_name
from .station import Session, SessionClosedError, config_to_wire, telemetry_to_wire
from .vehicle import TelemetryFrame

log = logging.getLogger("ugvsim.server")

_QUEUE_LIMIT = 256  # frames buffered per slow client before it is dropped


class StationServer:
    """Hub around one Session: inbound message handling and telemetry fan-out."""

    def __init__(
        self,
        session: Session,
        host: str = "127.0.0.1",
        port: int = 8765,
        rate: float = 1.0,
    ):
        if rate <= 0:
            raise ValueError("rate must be positive")
        self.session = session
        self.host = host
        self.port = port
        self.rate = rate
        self.latest_delivered: Optional[TelemetryFrame] = None
        self._clients: dict[int, asyncio.Queue] = {}
        self._client_ids = count(1)
        self._server: Optional[asyncio.base_events.Server] = None
        self._tick_task: Optional[asyncio.Task] = None

    # -- client hub (shared by TCP and WebSocket bridges) ---------------------

    def register_client(self) -> tuple[int, asyncio.Queue]:
        cid = next(self._client_ids)
        q: asyncio.Queue = asyncio.Queue(maxsize=_QUEUE_LIMIT)
        self._clients[cid] = q
        return cid, q

    def unregister_client(self, cid: int) -> None:
        self._clients.pop(cid, None)

    def broadcast(self, msg: dict[str, Any]) -> None:
        for cid, q in list(self._clients.items()):
            try:
                q.put_nowait(msg)
            except asyncio.QueueFull:
                log.warning("client %d lagging, dropping connection", cid)
                self.unregister_client(cid)

    def handle_message(self, msg: dict[str, Any]) -> Optional[dict[str, Any]]:
        """Process one inbound wire message; returns the reply, if any.

        Unknown message types and unknown fields are ignored per the wire
        contract; malformed commands get an error reply rather than a crash.
        """
        mtype = msg.get("type")
        if mtype == "command":
            try:
                cmd = parse_command_name(str(msg.get("name", "")))
                seq = self.session.submit_command(cmd)
            except (ValueError, SessionClosedError) as exc:
                return {"type": "error", "error": str(exc)}
            return {"type": "ack", "seq": seq}
        if mtype == "config_get":
            return config_to_wire(self.session.config)
        log.debug("ignoring message type %r", mtype)
        return None

    # -- simulation pacing ----------------------------------------------------

    async def _tick_loop(self) -> None:
        loop = asyncio.get_running_loop()
        period = self.session.config.tick / self.rate
        next_at = loop.time() + period
        while True:
            delay = next_at - loop.time()
            if delay > 0:
                await asyncio.sleep(delay)
            next_at += period
            frame = self.session.tick()
            if frame is not None:
                self.latest_delivered = frame
                self.broadcast(telemetry_to_wire(frame))

    # -- TCP wire protocol ------------------------------------------------------

    async def _handle_client(
        self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter
    ) -> None:
        peer = writer.get_extra_info("peername")
        cid, q = self.register_client()
        log.info("client %d connected from %s", cid, peer)

        async def sender() -> None:
            while True:
                msg = await q.get()
                writer.write(json.dumps(msg).encode("utf-8") + b"\n")
                await writer.drain()

        send_task = asyncio.create_task(sender())
        try:
            while True:
                line = await reader.readline()
                if not line:
                    break
                line = line.strip()
                if not line:
                    continue
                try:
                    msg = json.loads(line)
                except json.JSONDecodeError:
                    q.put_nowait({"type": "error", "error": "malformed JSON"})
                    continue
                reply = self.handle_message(msg)
                if reply is not None:
                    q.put_nowait(reply)
        except (ConnectionResetError, asyncio.IncompleteReadError):
            pass
        finally:
            self.unregister_client(cid)
            send_task.cancel()
            writer.close()
            log.info("client %d disconnected", cid)

    async def start(self) -> None:
        """Bind the TCP endpoint and start ticking."""
        self._server = await asyncio.start_server(
            self._handle_client, self.host, self.port
        )
        self.port = self._server.sockets[0].getsockname()[1]
        self._tick_task = asyncio.create_task(self._tick_loop())
        log.info("station listening on %s:%d", self.host, self.port)

    async def stop(self) -> None:
        if self._tick_task is not None:
            self._tick_task.cancel()
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()
        self.session.close()

    async def serve_forever(self) -> None:
        assert self._server is not None, "call start() first"
        async with self._server:
            await self._server.serve_forever()


async def run_station(
    session: Session,
    host: str = "127.0.0.1",
    port: int = 8765,
    http_port: Optional[int] = None,
    rate: float = 1.0,
    ready_line: bool = True,
) -> None:
    """Run the TCP station, plus the HTTP service when http_port is given."""
    server = StationServer(session, host=host, port=port, rate=rate)
    await server.start()
    if ready_line:
        # machine-readable readiness marker for wrappers and tests
        print(f"station listening on {server.host}:{server.port}", flush=True)
    tasks = [asyncio.create_task(server.serve_forever())]
    if http_port is not None:
        import uvicorn

        from .service import create_app

        class EmbeddedServer(uvicorn.Server):
            # the surrounding CLI owns signal handling
            def install_signal_handlers(self) -> None:
                pass

        config = uvicorn.Config(
            create_app(server), host=host, port=http_port, log_level="warning"
        )
        tasks.append(asyncio.create_task(EmbeddedServer(config).serve()))
        if ready_line:
            print(f"http service on {host}:{http_port}", flush=True)
    try:
        await asyncio.gather(*tasks)
    finally:
        await server.stop()
