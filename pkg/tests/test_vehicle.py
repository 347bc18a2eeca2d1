import math

import pytest

from ugvsim.commands import Command
from ugvsim.relays import DRIVE_OFF, DriveState, MotorState
from ugvsim.vehicle import (
    Obstacle,
    Pose,
    VehicleParams,
    VehicleState,
    World,
    apply_searchlight,
    ir_obstacle_check,
    motor_current,
    render_camera,
    step,
    wrap_angle,
)

F = MotorState.FORWARD
R = MotorState.REVERSE
O = MotorState.OFF

PARAMS = VehicleParams()
OPEN = World(width=100.0, height=100.0, start_pose=Pose(50.0, 50.0, 0.0))


def state_at(x=50.0, y=50.0, theta=0.0, **kw) -> VehicleState:
    return VehicleState(pose=Pose(x, y, theta), **kw)


def run(state, target, world, params, dt, n):
    for _ in range(n):
        state = step(state, target, world, params, dt)
    return state


class TestWrapAngle:
    def test_range(self):
        for a in (-10.0, -math.pi, 0.0, 1.0, math.pi, 3 * math.pi, 12.0):
            w = wrap_angle(a)
            assert -math.pi < w <= math.pi

    def test_identities(self):
        assert wrap_angle(math.pi) == math.pi
        assert wrap_angle(-math.pi) == math.pi
        assert wrap_angle(0.0) == 0.0
        assert abs(wrap_angle(2 * math.pi)) < 1e-15


class TestKinematics:
    def test_straight_line_closed_form(self):
        # v = r * omega_wheel: 0.05 m * 12 rad/s = 0.60 m/s for exactly 1 s
        params = VehicleParams(motor_no_load_speed=120.0)
        s = state_at(wheel_speed_left=12.0, wheel_speed_right=12.0)
        s = run(s, DriveState(F, F), OPEN, params, 0.01, 100)
        assert abs(s.pose.x - 50.60) < 1e-9
        assert abs(s.pose.y - 50.0) < 1e-9
        assert abs(s.pose.theta) < 1e-9
        assert abs(s.time - 1.0) < 1e-9

    def test_straight_line_heading_exact(self):
        s = state_at(theta=0.7)
        s = run(s, DriveState(F, F), OPEN, PARAMS, 0.01, 500)
        assert s.pose.theta == 0.7

    def test_spin_turn_zero_displacement(self):
        s = state_at()
        target = DriveState(F, R)  # right spin
        turned = 0.0
        prev = s.pose.theta
        for _ in range(2000):
            s = step(s, target, OPEN, PARAMS, 0.01)
            turned += abs(wrap_angle(s.pose.theta - prev))
            prev = s.pose.theta
            if turned >= math.pi:
                break
        assert turned >= math.pi
        assert math.hypot(s.pose.x - 50.0, s.pose.y - 50.0) <= 1e-6

    def test_right_spin_is_clockwise(self):
        s = run(state_at(), DriveState(F, R), OPEN, PARAMS, 0.01, 20)
        assert s.pose.theta < 0.0

    def test_idle_only_time_advances(self):
        s = state_at()
        s2 = step(s, DRIVE_OFF, OPEN, PARAMS, 0.01)
        assert s2.pose == s.pose
        assert s2.wheel_speed_left == 0.0
        assert s2.time == pytest.approx(0.01)
        assert s2.battery_charge_ah == s.battery_charge_ah

    def test_first_order_lag_step(self):
        s = state_at()
        s = step(s, DriveState(F, F), OPEN, PARAMS, 0.01)
        expected = (0.01 / PARAMS.motor_time_constant) * PARAMS.wheel_no_load_speed
        assert s.wheel_speed_left == pytest.approx(expected)
        assert s.wheel_speed_right == pytest.approx(expected)

    def test_determinism(self):
        a = run(state_at(), DriveState(F, R), OPEN, PARAMS, 0.01, 300)
        b = run(state_at(), DriveState(F, R), OPEN, PARAMS, 0.01, 300)
        assert a == b

    def test_bad_dt(self):
        with pytest.raises(ValueError):
            step(state_at(), DRIVE_OFF, OPEN, PARAMS, 0.0)
        with pytest.raises(ValueError):
            step(state_at(), DRIVE_OFF, OPEN, PARAMS, -0.01)


class TestBattery:
    def test_energy_ledger(self):
        s = state_at(battery_charge_ah=1.0)
        drawn = 0.0
        for _ in range(500):
            before = s.battery_charge_ah
            s = step(s, DriveState(F, F), OPEN, PARAMS, 0.01)
            drawn += motor_current(s.drive, PARAMS) * 0.01 / 3600.0
        assert s.battery_charge_ah == pytest.approx(1.0 - drawn, abs=1e-12)
        assert drawn == pytest.approx(2 * PARAMS.motor_cruise_current * 5.0 / 3600.0)

    def test_single_motor_draw(self):
        s = state_at()
        s = step(s, DriveState(F, O), OPEN, PARAMS, 1.0)
        expected = PARAMS.battery_capacity_ah - PARAMS.motor_cruise_current / 3600.0
        assert s.battery_charge_ah == pytest.approx(expected, abs=1e-12)

    def test_clamps_at_zero_and_forces_off(self):
        s = state_at(battery_charge_ah=1e-6, wheel_speed_left=5.0,
                     wheel_speed_right=5.0)
        s = step(s, DriveState(F, F), OPEN, PARAMS, 0.01)
        assert s.battery_charge_ah == 0.0
        s2 = step(s, DriveState(F, F), OPEN, PARAMS, 0.01)
        assert s2.drive == DRIVE_OFF
        assert abs(s2.wheel_speed_left) < abs(s.wheel_speed_left)
        s3 = run(s2, DriveState(F, F), OPEN, PARAMS, 0.01, 2000)
        assert s3.wheel_speed_left == pytest.approx(0.0, abs=1e-9)
        assert s3.battery_charge_ah == 0.0


class TestIrSensor:
    def world_with(self, *obstacles):
        return World(width=100.0, height=100.0, obstacles=obstacles,
                     start_pose=Pose(50.0, 50.0, 0.0))

    def test_edge_within_range(self):
        # obstacle edge 0.50 m dead ahead (2 ft envelope is 0.61 m)
        w = self.world_with(Obstacle(50.0 + 0.50 + 0.25, 50.0, 0.25))
        assert ir_obstacle_check(state_at(), w, PARAMS)

    def test_edge_at_boundary(self):
        w_in = self.world_with(Obstacle(50.0 + 0.60 + 0.25, 50.0, 0.25))
        w_out = self.world_with(Obstacle(50.0 + 0.62 + 0.25, 50.0, 0.25))
        assert ir_obstacle_check(state_at(), w_in, PARAMS)
        assert not ir_obstacle_check(state_at(), w_out, PARAMS)

    def test_beyond_range(self):
        w = self.world_with(Obstacle(50.0 + 1.00 + 0.25, 50.0, 0.25))
        assert not ir_obstacle_check(state_at(), w, PARAMS)

    def test_behind_not_detected(self):
        w = self.world_with(Obstacle(50.0 - 0.50 - 0.25, 50.0, 0.25))
        assert not ir_obstacle_check(state_at(), w, PARAMS)

    def test_outside_cone(self):
        # 0.4 m away at 45 deg off-axis: inside range, outside the 15 deg cone
        d = 0.4 / math.sqrt(2)
        w = self.world_with(Obstacle(50.0 + d, 50.0 + d, 0.05))
        assert not ir_obstacle_check(state_at(), w, PARAMS)

    def test_step_sets_led(self):
        w = self.world_with(Obstacle(50.55, 50.0, 0.1))
        s = step(state_at(), DRIVE_OFF, w, PARAMS, 0.01)
        assert s.obstacle_led


class TestSearchlight:
    def test_toggle_and_idempotence(self):
        s = state_at()
        on = apply_searchlight(s, Command.SEARCHLIGHT_ON)
        assert on.searchlight_on
        assert apply_searchlight(on, Command.SEARCHLIGHT_ON).searchlight_on
        off = apply_searchlight(on, Command.SEARCHLIGHT_OFF)
        assert not off.searchlight_on

    def test_rejects_navigation(self):
        with pytest.raises(ValueError):
            apply_searchlight(state_at(), Command.FORWARD)


class TestCamera:
    def world_with(self, *obstacles, ambient=1.0):
        return World(width=100.0, height=100.0, obstacles=obstacles,
                     ambient_light=ambient, start_pose=Pose(50.0, 50.0, 0.0))

    def test_daylight_sighting(self):
        w = self.world_with(Obstacle(52.0, 50.0, 0.3))
        cam = render_camera(state_at(), w, PARAMS)
        assert len(cam) == 1
        assert cam[0].bearing == pytest.approx(0.0)
        assert cam[0].distance == pytest.approx(2.0)

    def test_night_blind_without_searchlight(self):
        w = self.world_with(Obstacle(52.0, 50.0, 0.3), ambient=0.0)
        assert render_camera(state_at(), w, PARAMS) == ()

    def test_night_searchlight_cone(self):
        w = self.world_with(Obstacle(52.0, 50.0, 0.3), ambient=0.0)
        s = apply_searchlight(state_at(), Command.SEARCHLIGHT_ON)
        cam = render_camera(s, w, PARAMS)
        assert len(cam) == 1
        assert cam[0].distance == pytest.approx(2.0)

    def test_searchlight_range_limit(self):
        w = self.world_with(Obstacle(54.0, 50.0, 0.3), ambient=0.0)
        s = apply_searchlight(state_at(), Command.SEARCHLIGHT_ON)
        assert render_camera(s, w, PARAMS) == ()  # 4 m > 3 m searchlight range

    def test_fov_filter(self):
        w = self.world_with(Obstacle(50.0, 52.0, 0.3))  # 90 deg off heading
        assert render_camera(state_at(), w, PARAMS) == ()

    def test_day_range_scales_with_ambient(self):
        w = self.world_with(Obstacle(53.0, 50.0, 0.3), ambient=0.5)
        assert render_camera(state_at(), w, PARAMS) == ()  # range 2.5 m < 3 m
        w2 = self.world_with(Obstacle(52.0, 50.0, 0.3), ambient=0.5)
        assert len(render_camera(state_at(), w2, PARAMS)) == 1


class TestCollision:
    def test_blocked_by_obstacle(self):
        w = World(width=100.0, height=100.0,
                  obstacles=(Obstacle(50.3, 50.0, 0.2),),
                  start_pose=Pose(50.0, 50.0, 0.0))
        s = state_at(wheel_speed_left=12.0, wheel_speed_right=12.0)
        blocked = False
        for _ in range(200):
            prev = s
            s = step(s, DriveState(F, F), w, PARAMS, 0.01)
            if s.pose == prev.pose and s.wheel_speed_left == 0.0:
                blocked = True
                break
        assert blocked
        # never inside the obstacle, never past its near edge
        assert math.hypot(s.pose.x - 50.3, s.pose.y - 50.0) >= 0.2

    def test_blocked_at_bounds(self):
        w = World(width=2.0, height=2.0, start_pose=Pose(1.9, 1.0, 0.0))
        s = VehicleState(pose=Pose(1.9, 1.0, 0.0), wheel_speed_left=12.0,
                         wheel_speed_right=12.0)
        s = run(s, DriveState(F, F), w, PARAMS, 0.01, 100)
        assert s.pose.x <= 2.0

    def test_spin_allowed_against_wall(self):
        w = World(width=2.0, height=2.0, start_pose=Pose(2.0, 1.0, 0.0))
        s = VehicleState(pose=Pose(2.0, 1.0, 0.0))
        s = run(s, DriveState(F, R), w, PARAMS, 0.01, 100)
        assert s.pose.theta != 0.0
        assert s.pose.x == 2.0


class TestWorldValidation:
    def test_ok(self):
        World().validate()

    def test_bad_ambient(self):
        with pytest.raises(ValueError):
            World(ambient_light=1.5).validate()

    def test_obstacle_outside(self):
        with pytest.raises(ValueError):
            World(obstacles=(Obstacle(20.0, 5.0, 0.5),)).validate()

    def test_start_inside_obstacle(self):
        with pytest.raises(ValueError):
            World(obstacles=(Obstacle(5.0, 5.0, 0.5),)).validate()

    def test_params_positive(self):
        with pytest.raises(ValueError):
            VehicleParams(wheel_radius=0.0).validate()
