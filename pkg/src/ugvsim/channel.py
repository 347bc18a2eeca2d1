"""Seeded RF link impairments: AWGN on command audio, drops, latency, and
motor-interference noise on the camera telemetry."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .dtmf import ToneFrame
from .vehicle import Sighting, TelemetryFrame

UPLINK = 0    # operator -> vehicle (DTMF audio)
DOWNLINK = 1  # vehicle -> operator (telemetry)


@dataclass(frozen=True)
class ChannelConfig:
    latency: float = 0.05          # s, per message
    drop_probability: float = 0.01
    snr_db: float = 25.0           # uplink AWGN level; math.inf disables noise
    video_noise_gain: float = 0.05  # sighting noise sigma per ampere of motor draw
    seed: int = 0

    def validate(self) -> None:
        if self.latency < 0:
            raise ValueError("latency must be >= 0")
        if not 0.0 <= self.drop_probability <= 1.0:
            raise ValueError("drop_probability must be in [0, 1]")
        if self.video_noise_gain < 0:
            raise ValueError("video_noise_gain must be >= 0")


class RfLink:
    """One direction of the link. Owns its RNG stream, so both directions stay
    reproducible independent of each other's traffic."""

    def __init__(self, config: ChannelConfig, direction: int = UPLINK):
        config.validate()
        self.config = config
        self.direction = direction
        self.rng = np.random.default_rng([direction, config.seed])

    def _dropped(self) -> bool:
        return self.rng.random() < self.config.drop_probability

    def transmit_audio(self, frame: ToneFrame) -> Optional[ToneFrame]:
        """AWGN at snr_db relative to the frame's mean power; None when dropped."""
        if self._dropped():
            return None
        snr_db = self.config.snr_db
        signal_power = float(np.mean(frame.samples**2))
        if not math.isfinite(snr_db) or signal_power == 0.0:
            return frame
        sigma = math.sqrt(signal_power / 10.0 ** (snr_db / 10.0))
        noisy = frame.samples + self.rng.normal(0.0, sigma, len(frame.samples))
        return ToneFrame(np.clip(noisy, -1.0, 1.0), frame.sample_rate)

    def transmit_telemetry(
        self, frame: TelemetryFrame, motor_current: float
    ) -> Optional[TelemetryFrame]:
        """Perturb camera sightings with sigma proportional to motor draw."""
        if motor_current < 0:
            raise ValueError("motor_current must be >= 0")
        if self._dropped():
            return None
        sigma = self.config.video_noise_gain * motor_current
        noise = self.rng.normal(0.0, sigma, (len(frame.camera), 2))
        camera = tuple(
            Sighting(s.bearing + db, max(s.distance * (1.0 + dd), 0.0))
            for s, (db, dd) in zip(frame.camera, noise)
        )
        return replace(frame, camera=camera, noise_sigma=sigma)
