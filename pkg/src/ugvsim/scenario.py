"""Scenario files: the JSON description of world, vehicle overrides, and seed."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Any, Optional

from .vehicle import Obstacle, Pose, VehicleParams, World

_PARAM_FIELDS = {f.name for f in dataclasses.fields(VehicleParams)}


@dataclass(frozen=True)
class Scenario:
    world: World
    params: VehicleParams
    battery_ah: float
    seed: int


def parse_scenario(data: dict[str, Any]) -> Scenario:
    """Build a Scenario from the decoded JSON object, applying defaults."""
    try:
        bounds = data.get("bounds", {})
        width = float(bounds.get("w", 10.0))
        height = float(bounds.get("h", 10.0))
        world = World(
            width=width,
            height=height,
            obstacles=tuple(
                Obstacle(float(o["x"]), float(o["y"]), float(o["r"]))
                for o in data.get("obstacles", [])
            ),
            ambient_light=float(data.get("ambient_light", 1.0)),
            start_pose=_parse_pose(data.get("start_pose"), width, height),
        )
        overrides = data.get("params", {})
        unknown = set(overrides) - _PARAM_FIELDS
        if unknown:
            raise ValueError(f"unknown vehicle params: {sorted(unknown)}")
        params = dataclasses.replace(
            VehicleParams(), **{k: float(v) for k, v in overrides.items()}
        )
        battery = float(data.get("battery_ah", params.battery_capacity_ah))
        seed = int(data.get("seed", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad scenario: {exc}") from exc
    world.validate()
    params.validate()
    if not 0.0 <= battery <= params.battery_capacity_ah:
        raise ValueError("battery_ah must be within [0, battery_capacity_ah]")
    return Scenario(world=world, params=params, battery_ah=battery, seed=seed)


def _parse_pose(obj: Optional[dict[str, Any]], width: float, height: float) -> Pose:
    if obj is None:
        return Pose(width / 2.0, height / 2.0, 0.0)  # arena center
    return Pose(float(obj.get("x", 0.0)), float(obj.get("y", 0.0)),
                float(obj.get("theta", 0.0)))


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad scenario JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("scenario must be a JSON object")
    return parse_scenario(data)
