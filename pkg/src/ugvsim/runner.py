"""Headless scripted runs: drive a full session in-process and log the trajectory."""

from __future__ import annotations

import math
import time as _time
from dataclasses import dataclass
from typing import Optional, TextIO

from .commands import Command
from .station import Session, SessionConfig
from .vehicle import Pose

CSV_HEADER = "t,x,y,theta,battery_ah,relay_mask,obstacle_led"


@dataclass(frozen=True)
class RunReport:
    final_pose: Pose
    distance_m: float
    commands_sent: int
    commands_decoded: int
    commands_dropped: int
    battery_consumed_ah: float
    obstacle_led_count: int
    ticks: int
    sim_duration_s: float
    wall_duration_s: float

    def to_dict(self) -> dict:
        return {
            "final_pose": {
                "x": round(self.final_pose.x, 6),
                "y": round(self.final_pose.y, 6),
                "theta": round(self.final_pose.theta, 6),
            },
            "distance_m": round(self.distance_m, 6),
            "commands_sent": self.commands_sent,
            "commands_decoded": self.commands_decoded,
            "commands_dropped": self.commands_dropped,
            "battery_consumed_ah": round(self.battery_consumed_ah, 6),
            "obstacle_led_count": self.obstacle_led_count,
            "ticks": self.ticks,
            "sim_duration_s": round(self.sim_duration_s, 6),
            "wall_duration_s": round(self.wall_duration_s, 6),
        }


def _csv_row(t: float, session: Session) -> str:
    v = session.vehicle
    mask = session.last_truth.relay_mask if session.last_truth else 0
    return "%.6f,%.6f,%.6f,%.6f,%.6f,%d,%d" % (
        t, v.pose.x, v.pose.y, v.pose.theta, v.battery_charge_ah,
        mask, int(v.obstacle_led),
    )


def run_session(
    config: SessionConfig,
    script: list[tuple[float, Command]],
    duration: float,
    csv_out: Optional[TextIO] = None,
) -> RunReport:
    """Run the scripted command timeline through a full session, no network."""
    if duration <= 0:
        raise ValueError("duration must be positive")
    session = Session(config)
    ticks = round(duration / config.tick)
    queue = list(script)
    start_battery = session.vehicle.battery_charge_ah
    distance = 0.0
    led_count = 0
    led_prev = False
    wall_start = _time.perf_counter()

    if csv_out is not None:
        csv_out.write(CSV_HEADER + "\n")
        csv_out.write(_csv_row(0.0, session) + "\n")

    for _ in range(ticks):
        while queue and queue[0][0] <= session.time:
            session.submit_command(queue.pop(0)[1])
        prev = session.vehicle.pose
        session.tick()
        pose = session.vehicle.pose
        distance += math.hypot(pose.x - prev.x, pose.y - prev.y)
        if session.vehicle.obstacle_led and not led_prev:
            led_count += 1
        led_prev = session.vehicle.obstacle_led
        if csv_out is not None:
            csv_out.write(_csv_row(session.time, session) + "\n")

    wall = _time.perf_counter() - wall_start
    m = session.metrics
    return RunReport(
        final_pose=session.vehicle.pose,
        distance_m=distance,
        commands_sent=m.sent,
        commands_decoded=m.decoded,
        commands_dropped=m.dropped,
        battery_consumed_ah=start_battery - session.vehicle.battery_charge_ah,
        obstacle_led_count=led_count,
        ticks=ticks,
        sim_duration_s=ticks * config.tick,
        wall_duration_s=wall,
    )
