"""Fixed-step plant model: motors, skid-steer kinematics, battery, IR sensing, camera.

The vehicle is a point body on a planar obstacle field. Each track's wheel
speed follows a first-order lag toward its bang-bang target; pose integrates
by explicit Euler; moves that would enter an obstacle or leave the world
bounds are blocked outright (block-and-stop, no sliding).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .commands import Command, is_navigation
from .relays import DRIVE_OFF, DriveState, MotorState


def wrap_angle(a: float) -> float:
    """Normalize to (-pi, pi]."""
    a = math.remainder(a, math.tau)
    return math.pi if a <= -math.pi else a


@dataclass(frozen=True)
class VehicleParams:
    track_width: float = 0.30            # m between tracks
    wheel_radius: float = 0.05           # m
    gear_ratio: float = 10.0             # motor:wheel reduction
    motor_no_load_speed: float = 125.7   # rad/s at the motor shaft (~1200 RPM)
    motor_time_constant: float = 0.2     # s
    supply_voltage: float = 12.0         # V
    motor_max_current: float = 2.0       # A, stall bound (unused by nominal model)
    motor_cruise_current: float = 0.875  # A per driving motor; 2 motors -> 7 Ah in 4 h
    battery_capacity_ah: float = 7.0
    ir_range: float = 0.61               # m, 2 ft sensing envelope
    ir_half_angle: float = math.radians(15.0)
    searchlight_range: float = 3.0       # m
    searchlight_half_angle: float = math.radians(30.0)
    camera_fov_half_angle: float = math.radians(30.0)
    camera_day_range: float = 5.0        # m at full ambient light

    @property
    def wheel_no_load_speed(self) -> float:
        return self.motor_no_load_speed / self.gear_ratio

    @property
    def top_speed(self) -> float:
        return self.wheel_no_load_speed * self.wheel_radius

    def validate(self) -> None:
        for name in (
            "track_width", "wheel_radius", "gear_ratio", "motor_no_load_speed",
            "motor_time_constant", "supply_voltage", "motor_max_current",
            "motor_cruise_current", "battery_capacity_ah", "ir_range",
            "ir_half_angle", "searchlight_range", "searchlight_half_angle",
            "camera_fov_half_angle", "camera_day_range",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"VehicleParams.{name} must be positive")
        if self.motor_cruise_current > self.motor_max_current:
            raise ValueError("cruise current exceeds motor_max_current")


class Pose(NamedTuple):
    x: float
    y: float
    theta: float


class Obstacle(NamedTuple):
    x: float
    y: float
    r: float


class Sighting(NamedTuple):
    bearing: float
    distance: float


@dataclass(frozen=True)
class World:
    """Rectangular arena [0, width] x [0, height] with circular obstacles."""

    width: float = 10.0
    height: float = 10.0
    obstacles: tuple[Obstacle, ...] = ()
    ambient_light: float = 1.0
    start_pose: Pose = Pose(5.0, 5.0, 0.0)

    def validate(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("world bounds must be positive")
        if not 0.0 <= self.ambient_light <= 1.0:
            raise ValueError("ambient_light must be in [0, 1]")
        for ob in self.obstacles:
            if ob.r <= 0:
                raise ValueError("obstacle radius must be positive")
            if not (0 <= ob.x <= self.width and 0 <= ob.y <= self.height):
                raise ValueError(f"obstacle at ({ob.x}, {ob.y}) outside bounds")
        if not self.contains(self.start_pose.x, self.start_pose.y):
            raise ValueError("start pose outside bounds")
        if any(math.hypot(ob.x - self.start_pose.x, ob.y - self.start_pose.y) < ob.r
               for ob in self.obstacles):
            raise ValueError("start pose inside an obstacle")

    def contains(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.width and 0.0 <= y <= self.height

    def position_free(self, x: float, y: float) -> bool:
        if not self.contains(x, y):
            return False
        return all(math.hypot(ob.x - x, ob.y - y) >= ob.r for ob in self.obstacles)


@dataclass(frozen=True)
class VehicleState:
    time: float = 0.0
    pose: Pose = Pose(0.0, 0.0, 0.0)
    wheel_speed_left: float = 0.0   # rad/s at the wheel, signed
    wheel_speed_right: float = 0.0
    drive: DriveState = DRIVE_OFF
    searchlight_on: bool = False
    battery_charge_ah: float = 7.0
    obstacle_led: bool = False


@dataclass(frozen=True)
class TelemetryFrame:
    """Per-tick downlink packet: pose, drive electronics, sensors, camera."""

    time: float
    pose: Pose
    relay_mask: int
    drive: DriveState
    battery_ah: float
    obstacle_led: bool
    searchlight_on: bool
    camera: tuple[Sighting, ...] = ()
    noise_sigma: float = 0.0


def _target_wheel_speed(state: MotorState, params: VehicleParams) -> float:
    if state is MotorState.FORWARD:
        return params.wheel_no_load_speed
    if state is MotorState.REVERSE:
        return -params.wheel_no_load_speed
    return 0.0


def motor_current(drive: DriveState, params: VehicleParams) -> float:
    """Total battery draw: cruise current per non-Off motor."""
    active = (drive.left is not MotorState.OFF) + (drive.right is not MotorState.OFF)
    return params.motor_cruise_current * active


def step(
    state: VehicleState,
    target: DriveState,
    world: World,
    params: VehicleParams,
    dt: float,
) -> VehicleState:
    """Advance the plant by one fixed step and return the successor state."""
    if dt <= 0:
        raise ValueError("dt must be positive")

    drive = target if state.battery_charge_ah > 0.0 else DRIVE_OFF

    # First-order lag toward the bang-bang wheel speed target.
    alpha = min(dt / params.motor_time_constant, 1.0)
    wl = state.wheel_speed_left
    wr = state.wheel_speed_right
    wl += alpha * (_target_wheel_speed(drive.left, params) - wl)
    wr += alpha * (_target_wheel_speed(drive.right, params) - wr)

    v = params.wheel_radius * (wl + wr) / 2.0
    omega = params.wheel_radius * (wr - wl) / params.track_width
    x, y, theta = state.pose
    nx = x + v * math.cos(theta) * dt
    ny = y + v * math.sin(theta) * dt
    ntheta = wrap_angle(theta + omega * dt)

    if world.position_free(nx, ny):
        pose = Pose(nx, ny, ntheta)
    else:
        pose = state.pose  # block-and-stop: the whole move is rejected
        wl = 0.0
        wr = 0.0

    draw_ah = motor_current(drive, params) * dt / 3600.0
    charge = max(state.battery_charge_ah - draw_ah, 0.0)

    next_state = VehicleState(
        time=state.time + dt,
        pose=pose,
        wheel_speed_left=wl,
        wheel_speed_right=wr,
        drive=drive,
        searchlight_on=state.searchlight_on,
        battery_charge_ah=charge,
        obstacle_led=False,
    )
    return replace(next_state, obstacle_led=ir_obstacle_check(next_state, world, params))


def ir_obstacle_check(state: VehicleState, world: World, params: VehicleParams) -> bool:
    """True iff some obstacle's nearest point is inside the forward IR cone."""
    px, py, heading = state.pose
    for ob in world.obstacles:
        dx = ob.x - px
        dy = ob.y - py
        center_dist = math.hypot(dx, dy)
        if center_dist <= ob.r:
            return True  # sensor origin inside the obstacle
        if center_dist - ob.r > params.ir_range:
            continue
        bearing = wrap_angle(math.atan2(dy, dx) - heading)
        if abs(bearing) <= params.ir_half_angle:
            return True
    return False


def apply_searchlight(state: VehicleState, cmd: Command) -> VehicleState:
    if is_navigation(cmd):
        raise ValueError(f"not a searchlight command: {cmd}")
    return replace(state, searchlight_on=cmd is Command.SEARCHLIGHT_ON)


def render_camera(
    state: VehicleState, world: World, params: VehicleParams
) -> tuple[Sighting, ...]:
    """Obstacle sightings within the camera cone and the current illumination.

    Per bearing the effective range is the better of ambient daylight and the
    IR searchlight cone; with no ambient light and the light off the camera
    sees nothing.
    """
    px, py, heading = state.pose
    day_range = params.camera_day_range * world.ambient_light
    sightings: list[Sighting] = []
    for ob in world.obstacles:
        dx = ob.x - px
        dy = ob.y - py
        dist = math.hypot(dx, dy)
        bearing = wrap_angle(math.atan2(dy, dx) - heading) if dist > 0 else 0.0
        if abs(bearing) > params.camera_fov_half_angle:
            continue
        effective = day_range
        if state.searchlight_on and abs(bearing) <= params.searchlight_half_angle:
            effective = max(effective, params.searchlight_range)
        if dist <= effective:
            sightings.append(Sighting(bearing, dist))
    return tuple(sightings)
