"""Command-line entry points: scripted runs, the live station, DTMF utilities,
and a thin wire-protocol client.

Exit codes: 0 success, 2 input error, 3 environment error (e.g. bind failure).
"""

from __future__ import annotations

import argparse
import asyncio
import dataclasses
import json
import logging
import socket
import sys
import wave
from typing import Optional

import numpy as np

from . import dtmf
from .channel import ChannelConfig
from .commands import decode_command, encode_command, load_script, parse_command_name
from .runner import run_session
from .scenario import Scenario, load_scenario
from .server import run_station
from .station import DEFAULT_PORT, Session, SessionConfig

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ENV = 3


def _channel_from_args(args: argparse.Namespace, seed: int) -> ChannelConfig:
    base = ChannelConfig(seed=seed)
    return ChannelConfig(
        latency=base.latency if args.latency_ms is None else args.latency_ms / 1000.0,
        drop_probability=(
            base.drop_probability if args.drop_prob is None else args.drop_prob
        ),
        snr_db=base.snr_db if args.snr_db is None else args.snr_db,
        video_noise_gain=base.video_noise_gain,
        seed=seed,
    )


def _session_config(args: argparse.Namespace) -> SessionConfig:
    if args.scenario:
        scenario = load_scenario(args.scenario)
    else:
        scenario = Scenario(
            world=SessionConfig().world,
            params=SessionConfig().params,
            battery_ah=SessionConfig().params.battery_capacity_ah,
            seed=0,
        )
    seed = scenario.seed if args.seed is None else args.seed
    return SessionConfig.from_scenario(
        scenario,
        channel=_channel_from_args(args, seed),
        invert_turns=args.invert_turns,
    )


def _add_channel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="override scenario seed")
    p.add_argument("--snr-db", type=float, default=None,
                   help="uplink SNR in dB ('inf' disables noise)")
    p.add_argument("--drop-prob", type=float, default=None,
                   help="per-message drop probability [0,1]")
    p.add_argument("--latency-ms", type=float, default=None,
                   help="one-way channel latency in milliseconds")
    p.add_argument("--invert-turns", action="store_true",
                   help="swap the left/right spin convention")


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = _session_config(args)
        script = load_script(args.script) if args.script else []
        csv_fh = open(args.out, "w", encoding="utf-8", newline="") if args.out else None
        try:
            report = run_session(config, script, args.duration, csv_fh)
        finally:
            if csv_fh:
                csv_fh.close()
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    logging.basicConfig(
        level=logging.INFO, format="%(asctime)s %(name)s %(levelname)s %(message)s"
    )
    try:
        config = _session_config(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    session = Session(config)
    http_port = args.http_port if args.http_port else None
    try:
        asyncio.run(
            run_station(
                session,
                host=args.host,
                port=args.port,
                http_port=http_port,
                rate=args.rate,
            )
        )
    except KeyboardInterrupt:
        pass
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    return EXIT_OK


def _dtmf_config(args: argparse.Namespace) -> dtmf.DtmfConfig:
    return dtmf.DtmfConfig(
        sample_rate=args.sample_rate,
        symbol_duration=args.symbol_ms / 1000.0,
        gap_duration=args.gap_ms / 1000.0,
        amplitude=args.amplitude,
    )


def cmd_dtmf(args: argparse.Namespace) -> int:
    try:
        config = _dtmf_config(args)
        config.validate()
        if args.mode == "encode":
            with open(args.in_path, encoding="utf-8") as fh:
                names = [ln.strip() for ln in fh if ln.strip()]
            commands = [parse_command_name(n) for n in names]
            frames = [
                dtmf.synthesize_symbol(encode_command(c), config) for c in commands
            ]
            samples = (
                np.concatenate([f.samples for f in frames])
                if frames
                else np.zeros(0)
            )
            dtmf.write_wav(args.out_path, dtmf.ToneFrame(samples, config.sample_rate))
        else:
            frame = dtmf.read_wav(args.in_path)
            if frame.sample_rate != config.sample_rate:
                # decode at the file's own rate, keeping the framing settings
                config = dataclasses.replace(config, sample_rate=frame.sample_rate)
            symbols = dtmf.decode_stream(frame.samples, config)
            lines = []
            for sym in symbols:
                cmd = decode_command(sym)
                lines.append(cmd.value if cmd else f"unknown({sym})")
            text = "".join(line + "\n" for line in lines)
            if args.out_path == "-":
                sys.stdout.write(text)
            else:
                with open(args.out_path, "w", encoding="utf-8") as fh:
                    fh.write(text)
    except (OSError, ValueError, EOFError, wave.Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_send(args: argparse.Namespace) -> int:
    """Thin client: send one command to a live station and print the ack."""
    try:
        cmd = parse_command_name(args.name)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        with socket.create_connection((args.host, args.port), timeout=5.0) as sock:
            sock.sendall(
                (json.dumps({"type": "command", "name": cmd.value}) + "\n").encode()
            )
            fh = sock.makefile("r", encoding="utf-8")
            acked = False
            frames_left = args.frames
            for line in fh:
                msg = json.loads(line)
                if msg.get("type") == "telemetry":
                    if frames_left <= 0:
                        continue
                    frames_left -= 1
                print(json.dumps(msg))
                acked = acked or msg.get("type") == "ack"
                if acked and frames_left <= 0:
                    break
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ugvsim", description="teleoperated UGV simulator"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scripted scenario headless")
    p_run.add_argument("--scenario", help="scenario JSON path (default world if omitted)")
    p_run.add_argument("--script", help="command script CSV path (time_s,command)")
    p_run.add_argument("--duration", type=float, default=10.0,
                       help="simulated seconds to run")
    p_run.add_argument("--out", help="trajectory CSV output path")
    _add_channel_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_serve = sub.add_parser("serve", help="serve a live station")
    p_serve.add_argument("--scenario", help="scenario JSON path")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=DEFAULT_PORT,
                         help="TCP wire-protocol port (0 picks a free port)")
    p_serve.add_argument("--http-port", type=int, default=8000,
                         help="HTTP/WebSocket service port (0 disables)")
    p_serve.add_argument("--rate", type=float, default=1.0,
                         help="simulation speed multiplier")
    _add_channel_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    p_dtmf = sub.add_parser("dtmf", help="encode command lists to WAV / decode WAV")
    p_dtmf.add_argument("mode", choices=("encode", "decode"))
    p_dtmf.add_argument("in_path")
    p_dtmf.add_argument("out_path", nargs="?", default="-")
    p_dtmf.add_argument("--sample-rate", type=int, default=8000)
    p_dtmf.add_argument("--symbol-ms", type=float, default=80.0)
    p_dtmf.add_argument("--gap-ms", type=float, default=80.0)
    p_dtmf.add_argument("--amplitude", type=float, default=0.45)
    p_dtmf.set_defaults(func=cmd_dtmf)

    p_send = sub.add_parser("send", help="send one command to a live station")
    p_send.add_argument("name", help="command name (forward, stop, light_on, ...)")
    p_send.add_argument("--host", default="127.0.0.1")
    p_send.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_send.add_argument("--frames", type=int, default=0,
                        help="also print this many telemetry frames")
    p_send.set_defaults(func=cmd_send)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
