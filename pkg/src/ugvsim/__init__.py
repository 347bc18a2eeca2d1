"""Desk-scale teleoperated UGV simulator.

Operator commands travel as DTMF tones over a noisy RF uplink, are decoded by
a Goertzel tone detector, drive an 8-relay dual H-bridge, and move a
skid-steer vehicle through a 2-D obstacle world; telemetry (pose, IR obstacle
LED, battery, interference-corrupted camera sightings) flows back downlink.
"""

__version__ = "0.1.0"

from .channel import ChannelConfig, RfLink
from .commands import Command, decode_command, encode_command, is_navigation
from .dtmf import DtmfConfig, ToneFrame, decode_stream, detect_symbol, goertzel_power, synthesize_symbol
from .relays import DriveState, MotorState, RelayBank, command_to_relays, relays_to_motors, validate_relays
from .scenario import Scenario, load_scenario
from .station import Session, SessionConfig
from .vehicle import (
    Obstacle,
    Pose,
    Sighting,
    TelemetryFrame,
    VehicleParams,
    VehicleState,
    World,
    apply_searchlight,
    ir_obstacle_check,
    render_camera,
    step,
)

__all__ = [
    "ChannelConfig",
    "Command",
    "DriveState",
    "DtmfConfig",
    "MotorState",
    "Obstacle",
    "Pose",
    "RelayBank",
    "RfLink",
    "Scenario",
    "Session",
    "SessionConfig",
    "Sighting",
    "TelemetryFrame",
    "ToneFrame",
    "VehicleParams",
    "VehicleState",
    "World",
    "apply_searchlight",
    "command_to_relays",
    "decode_command",
    "decode_stream",
    "detect_symbol",
    "encode_command",
    "goertzel_power",
    "ir_obstacle_check",
    "is_navigation",
    "load_scenario",
    "relays_to_motors",
    "render_camera",
    "step",
    "synthesize_symbol",
    "validate_relays",
]
