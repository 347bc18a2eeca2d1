"""Eight-relay dual H-bridge model: command -> relay closures -> motor drive.

Bridge layout (canonical for this artifact): per track the four relays are
high-A, low-A, high-B, low-B in that order, so K1..K4 drive the left track
(forward = K1&K4, reverse = K2&K3) and K5..K8 mirror it on the right. Closing
both relays of one supply leg (K1&K2, K3&K4, K5&K6, K7&K8) shorts the supply;
such banks are rejected outright.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, NamedTuple

from .commands import Command, is_navigation


class ShootThroughError(ValueError):
    """An H-bridge leg has both relays closed (supply short)."""


class MotorState(Enum):
    OFF = "off"
    FORWARD = "fwd"
    REVERSE = "rev"


class DriveState(NamedTuple):
    left: MotorState
    right: MotorState


DRIVE_OFF = DriveState(MotorState.OFF, MotorState.OFF)

# Same-leg relay pairs, 0-based indices into the bank.
_LEG_PAIRS = ((0, 1), (2, 3), (4, 5), (6, 7))


class RelayBank(NamedTuple):
    """Closure state of K1..K8; index 0 is K1."""

    relays: tuple[bool, bool, bool, bool, bool, bool, bool, bool]

    @classmethod
    def open_all(cls) -> "RelayBank":
        return cls((False,) * 8)

    @classmethod
    def closing(cls, numbers: Iterable[int]) -> "RelayBank":
        """Bank with the given 1-based relay numbers closed."""
        closed = set(numbers)
        if not closed <= set(range(1, 9)):
            raise ValueError(f"relay numbers must be 1..8, got {sorted(closed)}")
        return cls(tuple(i + 1 in closed for i in range(8)))

    @classmethod
    def from_mask(cls, mask: int) -> "RelayBank":
        if not 0 <= mask <= 0xFF:
            raise ValueError(f"relay mask out of range: {mask}")
        return cls(tuple(bool(mask >> i & 1) for i in range(8)))

    @property
    def mask(self) -> int:
        """8-bit closure mask, K1 = LSB."""
        return sum(1 << i for i, closed in enumerate(self.relays) if closed)


# Fixed drive table; every pattern passes validate_relays by construction.
_DRIVE_TABLE: dict[Command, frozenset[int]] = {
    Command.STOP: frozenset(),
    Command.FORWARD: frozenset({1, 4, 5, 8}),
    Command.BACKWARD: frozenset({2, 3, 6, 7}),
    Command.RIGHT: frozenset({1, 4, 6, 7}),  # left fwd + right rev: clockwise spin
    Command.LEFT: frozenset({2, 3, 5, 8}),
}


def validate_relays(bank: RelayBank) -> bool:
    """True iff no supply leg has both of its relays closed."""
    r = bank.relays
    return not any(r[a] and r[b] for a, b in _LEG_PAIRS)


def relays_to_motors(bank: RelayBank) -> DriveState:
    """Resolve a safe bank to per-track drive; unsafe banks raise."""
    if not validate_relays(bank):
        raise ShootThroughError(f"unsafe relay bank: mask=0x{bank.mask:02x}")
    r = bank.relays

    def bridge(high_a: bool, low_a: bool, high_b: bool, low_b: bool) -> MotorState:
        if high_a and low_b:
            return MotorState.FORWARD
        if high_b and low_a:
            return MotorState.REVERSE
        return MotorState.OFF

    return DriveState(bridge(r[0], r[1], r[2], r[3]), bridge(r[4], r[5], r[6], r[7]))


def command_to_relays(cmd: Command, invert_turns: bool = False) -> RelayBank:
    """Relay pattern for a navigation command; searchlight commands never touch relays."""
    if not is_navigation(cmd):
        raise ValueError(f"not a navigation command: {cmd}")
    if invert_turns and cmd in (Command.LEFT, Command.RIGHT):
        cmd = Command.RIGHT if cmd is Command.LEFT else Command.LEFT
    return RelayBank.closing(_DRIVE_TABLE[cmd])
