"""Operator instruction set and its mapping onto DTMF symbols."""

from __future__ import annotations

import csv
import io
from enum import Enum
from typing import Optional


class Command(Enum):
    """The seven operator instructions. Values double as wire-protocol names."""

    FORWARD = "forward"
    BACKWARD = "backward"
    LEFT = "left"
    RIGHT = "right"
    STOP = "stop"
    SEARCHLIGHT_ON = "light_on"
    SEARCHLIGHT_OFF = "light_off"


NAVIGATION_COMMANDS = frozenset(
    {Command.FORWARD, Command.BACKWARD, Command.LEFT, Command.RIGHT, Command.STOP}
)

# Keypad-arrow mnemonic: 2/4/6/8 point the way, 5 stops, 1/3 toggle the light.
COMMAND_SYMBOLS: dict[Command, str] = {
    Command.FORWARD: "2",
    Command.LEFT: "4",
    Command.STOP: "5",
    Command.RIGHT: "6",
    Command.BACKWARD: "8",
    Command.SEARCHLIGHT_ON: "1",
    Command.SEARCHLIGHT_OFF: "3",
}

_SYMBOL_COMMANDS = {sym: cmd for cmd, sym in COMMAND_SYMBOLS.items()}

# Accepted spellings for scripts and the CLI (variant names, case-insensitive,
# plus the wire names). Canonical output is always the wire name.
_NAME_ALIASES: dict[str, Command] = {}
for _cmd in Command:
    _NAME_ALIASES[_cmd.value] = _cmd
    _NAME_ALIASES[_cmd.name.replace("_", "").lower()] = _cmd
_NAME_ALIASES["searchlighton"] = Command.SEARCHLIGHT_ON
_NAME_ALIASES["searchlightoff"] = Command.SEARCHLIGHT_OFF


def encode_command(cmd: Command) -> str:
    return COMMAND_SYMBOLS[cmd]


def decode_command(symbol: str) -> Optional[Command]:
    """Inverse of encode_command; unmapped symbols are simply no-command."""
    return _SYMBOL_COMMANDS.get(symbol.upper())


def is_navigation(cmd: Command) -> bool:
    return cmd in NAVIGATION_COMMANDS


def parse_command_name(name: str) -> Command:
    key = name.strip().lower().replace("-", "_")
    try:
        return _NAME_ALIASES[key]
    except KeyError:
        raise ValueError(f"unknown command name: {name!r}") from None


def parse_script(text: str) -> list[tuple[float, Command]]:
    """Parse a command script: CSV rows `time_s,command`, sorted by time.

    Blank lines and #-comments are skipped; a header row is optional.
    """
    entries: list[tuple[float, Command]] = []
    reader = csv.reader(io.StringIO(text))
    for lineno, row in enumerate(reader, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        if lineno == 1 and row[0].strip().lower() == "time_s":
            continue
        if len(row) < 2:
            raise ValueError(f"script line {lineno}: expected `time_s,command`")
        try:
            t = float(row[0])
        except ValueError:
            raise ValueError(f"script line {lineno}: bad time {row[0]!r}") from None
        if t < 0:
            raise ValueError(f"script line {lineno}: negative time")
        entries.append((t, parse_command_name(row[1])))
    entries.sort(key=lambda e: e[0])
    return entries


def load_script(path: str) -> list[tuple[float, Command]]:
    with open(path, encoding="utf-8") as fh:
        return parse_script(fh.read())
