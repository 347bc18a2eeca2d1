"""Session engine: operator command -> DTMF -> channel -> decoder -> relays ->
vehicle, at a fixed tick, with telemetry going back through the downlink.

The engine is pure bookkeeping plus the module pipeline; it performs no I/O
and no wall-clock timing, so scripted runs, the TCP server, and tests all
drive the same code. One tick advances simulated time by `tick` seconds:
due uplink audio is played into the window decoder, decoded commands are
dispatched, the plant steps, and the fresh telemetry frame enters the
downlink (delivered `latency` later, or dropped).
"""

from __future__ import annotations

import dataclasses
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from . import dtmf
from .channel import DOWNLINK, UPLINK, ChannelConfig, RfLink
from .commands import Command, decode_command, encode_command, is_navigation
from .relays import RelayBank, command_to_relays, relays_to_motors
from .scenario import Scenario
from .vehicle import (
    DRIVE_OFF,
    TelemetryFrame,
    VehicleParams,
    VehicleState,
    World,
    apply_searchlight,
    motor_current,
    render_camera,
    step,
)

DEFAULT_PORT = 8765


class SessionClosedError(RuntimeError):
    """Command submitted to a session that has been closed."""


@dataclass(frozen=True)
class SessionConfig:
    tick: float = 0.01
    dtmf: dtmf.DtmfConfig = field(default_factory=dtmf.DtmfConfig)
    channel: ChannelConfig = field(default_factory=ChannelConfig)
    params: VehicleParams = field(default_factory=VehicleParams)
    world: World = field(default_factory=World)
    battery_ah: Optional[float] = None  # None -> full capacity
    invert_turns: bool = False
    port: int = DEFAULT_PORT

    def validate(self) -> None:
        if self.tick <= 0:
            raise ValueError("tick must be positive")
        self.dtmf.validate()
        self.channel.validate()
        self.params.validate()
        self.world.validate()

    @classmethod
    def from_scenario(cls, scenario: Scenario, **overrides: Any) -> "SessionConfig":
        channel = overrides.pop("channel", None) or ChannelConfig(seed=scenario.seed)
        return cls(
            channel=channel,
            params=scenario.params,
            world=scenario.world,
            battery_ah=scenario.battery_ah,
            **overrides,
        )


@dataclass
class Metrics:
    sent: int = 0
    decoded: int = 0
    dropped: int = 0
    decode_errors: int = 0


@dataclass(frozen=True)
class SessionSnapshot:
    time: float
    vehicle: VehicleState
    last_command: Optional[Command]
    pending_audio: int
    metrics: Metrics


class Session:
    """Owns the whole control loop state. Callers serialize tick/submit."""

    def __init__(self, config: SessionConfig):
        config.validate()
        self.config = config
        self.time = 0.0
        self.metrics = Metrics()
        self.vehicle = VehicleState(
            pose=config.world.start_pose,
            battery_charge_ah=(
                config.params.battery_capacity_ah
                if config.battery_ah is None
                else config.battery_ah
            ),
        )
        self._uplink = RfLink(config.channel, UPLINK)
        self._downlink = RfLink(config.channel, DOWNLINK)
        self._decoder = dtmf.StreamDecoder(config.dtmf)
        self._pending_audio: deque[tuple[float, list[np.ndarray]]] = deque()
        self._audio_windows: deque[np.ndarray] = deque()
        self._pending_telemetry: deque[tuple[float, TelemetryFrame]] = deque()
        self._window_phase = 0
        self._tick_samples = round(config.tick * config.dtmf.sample_rate)
        self._relay_bank = RelayBank.open_all()
        self._drive_target = DRIVE_OFF
        self._last_command: Optional[Command] = None
        self.last_truth: Optional[TelemetryFrame] = None
        self._seq = 0
        self._closed = False

    # -- operator side ------------------------------------------------------

    def submit_command(self, cmd: Command) -> int:
        """Encode, synthesize, and put the command on the uplink channel.

        Returns a local sequence number immediately; the channel may still
        drop the frame in flight.
        """
        if self._closed:
            raise SessionClosedError("session is closed")
        self._seq += 1
        self.metrics.sent += 1
        frame = dtmf.synthesize_symbol(encode_command(cmd), self.config.dtmf)
        sent = self._uplink.transmit_audio(frame)
        if sent is None:
            self.metrics.dropped += 1
        else:
            due = self.time + self.config.channel.latency
            self._pending_audio.append((due, self._to_windows(sent.samples)))
        return self._seq

    def _to_windows(self, samples: np.ndarray) -> list[np.ndarray]:
        """Split delivered audio into detect windows, zero-padding the tail so
        every frame starts window-aligned in the playout buffer."""
        w = self.config.dtmf.detect_window
        pad = -len(samples) % w
        if pad:
            samples = np.concatenate([samples, np.zeros(pad)])
        return [samples[i : i + w] for i in range(0, len(samples), w)]

    # -- simulation side ----------------------------------------------------

    def tick(self) -> Optional[TelemetryFrame]:
        """Advance one tick; returns the telemetry frame delivered this tick
        (None when nothing is due or the downlink dropped it)."""
        # Due uplink frames enter the playout buffer in transmission order.
        while self._pending_audio and self._pending_audio[0][0] <= self.time:
            self._audio_windows.extend(self._pending_audio.popleft()[1])

        # The decoder consumes audio at real-time rate, one window per
        # detect_window worth of samples; silence plays when the buffer is dry.
        self._window_phase += self._tick_samples
        w = self.config.dtmf.detect_window
        while self._window_phase >= w:
            self._window_phase -= w
            if self._audio_windows:
                symbol = self._decoder.push_window(self._audio_windows.popleft())
                if symbol is not None:
                    self._dispatch_symbol(symbol)
            else:
                self._decoder.reset()  # silence plays when the buffer is dry

        if self.vehicle.battery_charge_ah <= 0.0:
            self._relay_bank = RelayBank.open_all()  # dead battery: coils drop out
            self._drive_target = DRIVE_OFF

        self.vehicle = step(
            self.vehicle,
            self._drive_target,
            self.config.world,
            self.config.params,
            self.config.tick,
        )
        self.time = self.vehicle.time

        truth = TelemetryFrame(
            time=self.time,
            pose=self.vehicle.pose,
            relay_mask=self._relay_bank.mask,
            drive=self.vehicle.drive,
            battery_ah=self.vehicle.battery_charge_ah,
            obstacle_led=self.vehicle.obstacle_led,
            searchlight_on=self.vehicle.searchlight_on,
            camera=render_camera(self.vehicle, self.config.world, self.config.params),
        )
        self.last_truth = truth

        current = motor_current(self.vehicle.drive, self.config.params)
        sent = self._downlink.transmit_telemetry(truth, current)
        if sent is not None:
            due = self.time + self.config.channel.latency
            self._pending_telemetry.append((due, sent))

        if self._pending_telemetry and self._pending_telemetry[0][0] <= self.time:
            return self._pending_telemetry.popleft()[1]
        return None

    def _dispatch_symbol(self, symbol: str) -> None:
        cmd = decode_command(symbol)
        if cmd is None:
            self.metrics.decode_errors += 1  # spurious decode: never touches state
            return
        self.metrics.decoded += 1
        self._last_command = cmd
        if is_navigation(cmd):
            self._relay_bank = command_to_relays(cmd, self.config.invert_turns)
            self._drive_target = relays_to_motors(self._relay_bank)
        else:
            self.vehicle = apply_searchlight(self.vehicle, cmd)

    # -- diagnostics --------------------------------------------------------

    def snapshot(self) -> SessionSnapshot:
        return SessionSnapshot(
            time=self.time,
            vehicle=self.vehicle,
            last_command=self._last_command,
            pending_audio=len(self._pending_audio),
            metrics=dataclasses.replace(self.metrics),
        )

    def close(self) -> None:
        self._closed = True


# -- wire protocol ----------------------------------------------------------
# Newline-delimited JSON, UTF-8. Unknown fields are ignored by both sides.

def telemetry_to_wire(frame: TelemetryFrame) -> dict[str, Any]:
    return {
        "type": "telemetry",
        "t": frame.time,
        "pose": {"x": frame.pose.x, "y": frame.pose.y, "theta": frame.pose.theta},
        "relay_mask": frame.relay_mask,
        "drive": [frame.drive.left.value, frame.drive.right.value],
        "battery_ah": frame.battery_ah,
        "obstacle_led": frame.obstacle_led,
        "searchlight": frame.searchlight_on,
        "camera": [
            {"bearing": s.bearing, "distance": s.distance} for s in frame.camera
        ],
        "noise_sigma": frame.noise_sigma,
    }


def config_to_wire(config: SessionConfig) -> dict[str, Any]:
    world = config.world
    msg = {
        "type": "config",
        "tick": config.tick,
        "invert_turns": config.invert_turns,
        "dtmf": dataclasses.asdict(config.dtmf),
        "channel": dataclasses.asdict(config.channel),
        "vehicle": dataclasses.asdict(config.params),
        "world": {
            "bounds": {"w": world.width, "h": world.height},
            "obstacles": [{"x": o.x, "y": o.y, "r": o.r} for o in world.obstacles],
            "ambient_light": world.ambient_light,
            "start_pose": {
                "x": world.start_pose.x,
                "y": world.start_pose.y,
                "theta": world.start_pose.theta,
            },
        },
    }
    if not math.isfinite(msg["channel"]["snr_db"]):
        msg["channel"]["snr_db"] = None  # JSON has no Infinity
    return msg
