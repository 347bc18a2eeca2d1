"""DTMF tone synthesis and detection (the command link's encoder/decoder pair)."""

from __future__ import annotations

import math
import wave
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.signal import lfilter

# Standard telephony 4x4 grid: rows are the low group, columns the high group.
LOW_FREQS = (697.0, 770.0, 852.0, 941.0)
HIGH_FREQS = (1209.0, 1336.0, 1477.0, 1633.0)

_KEYPAD = ("123A", "456B", "789C", "*0#D")

SYMBOL_FREQS: dict[str, tuple[float, float]] = {
    sym: (LOW_FREQS[r], HIGH_FREQS[c])
    for r, row in enumerate(_KEYPAD)
    for c, sym in enumerate(row)
}
SYMBOLS = tuple(SYMBOL_FREQS)


class DtmfConfigError(ValueError):
    """Raised for a DtmfConfig that violates its own constraints."""


@dataclass(frozen=True)
class DtmfConfig:
    sample_rate: int = 8000
    symbol_duration: float = 0.080  # s of tone
    gap_duration: float = 0.080     # s of trailing silence
    amplitude: float = 0.45         # peak per tone; sum must stay within [-1, 1]
    detect_window: int = 320        # samples per detection window (40 ms at 8 kHz)
    power_ratio_threshold: float = 4.0
    twist_limit_db: float = 8.0

    def validate(self) -> None:
        if self.sample_rate < 2 * max(HIGH_FREQS):
            raise DtmfConfigError(
                f"sample_rate {self.sample_rate} below Nyquist for {max(HIGH_FREQS)} Hz"
            )
        if self.symbol_duration <= 0:
            raise DtmfConfigError("symbol_duration must be positive")
        if self.gap_duration < 0:
            raise DtmfConfigError("gap_duration must be >= 0")
        if not 0.0 <= self.amplitude <= 0.5:
            raise DtmfConfigError("amplitude must be in [0, 0.5] (two tones sum)")
        if self.detect_window <= 0:
            raise DtmfConfigError("detect_window must be positive")
        if self.detect_window > round(self.symbol_duration * self.sample_rate):
            raise DtmfConfigError("detect_window longer than one symbol of audio")
        if self.power_ratio_threshold <= 0 or self.twist_limit_db <= 0:
            raise DtmfConfigError("detection thresholds must be positive")


@dataclass(frozen=True)
class ToneFrame:
    """A mono PCM buffer (float amplitudes in [-1, 1])."""

    samples: np.ndarray
    sample_rate: int

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


class Detection(NamedTuple):
    symbol: str
    confidence: float


def synthesize_symbol(symbol: str, config: DtmfConfig = DtmfConfig()) -> ToneFrame:
    """Render one symbol as tone + trailing gap of silence."""
    config.validate()
    sym = symbol.upper()
    if sym not in SYMBOL_FREQS:
        raise ValueError(f"not a DTMF symbol: {symbol!r}")
    f_low, f_high = SYMBOL_FREQS[sym]
    n_tone = round(config.sample_rate * config.symbol_duration)
    n_gap = round(config.sample_rate * config.gap_duration)
    t = np.arange(n_tone) / config.sample_rate
    tone = config.amplitude * (
        np.sin(2.0 * np.pi * f_low * t) + np.sin(2.0 * np.pi * f_high * t)
    )
    samples = np.concatenate([tone, np.zeros(n_gap)])
    return ToneFrame(samples=samples, sample_rate=config.sample_rate)


def goertzel_power(
    samples: Sequence[float] | np.ndarray, target_freq: float, sample_rate: float
) -> float:
    """Squared DFT magnitude at the bin nearest target_freq, via the Goertzel recurrence.

    The recurrence s[n] = x[n] + 2cos(w)*s[n-1] - s[n-2] is evaluated as the
    equivalent IIR filter; power = s1^2 + s2^2 - 2cos(w)*s1*s2.
    """
    x = np.asarray(samples, dtype=np.float64)
    n = len(x)
    if n == 0:
        raise ValueError("empty sample window")
    if not 0.0 < target_freq < sample_rate / 2.0:
        raise ValueError(f"target_freq {target_freq} outside (0, fs/2)")
    k = round(n * target_freq / sample_rate)
    coeff = 2.0 * math.cos(2.0 * math.pi * k / n)
    s = lfilter([1.0], [1.0, -coeff, 1.0], x)
    s1 = float(s[-1])
    s2 = float(s[-2]) if n > 1 else 0.0
    power = s1 * s1 + s2 * s2 - coeff * s1 * s2
    return max(power, 0.0)


def detect_symbol(
    frame_window: Sequence[float] | np.ndarray, config: DtmfConfig = DtmfConfig()
) -> Optional[Detection]:
    """Classify one detection window; None when no symbol stands out.

    A symbol is accepted when the strongest tone of each group beats the sum of
    the other three by power_ratio_threshold and the low/high imbalance stays
    within twist_limit_db. Confidence is the smaller of the two ratio margins.
    """
    window = np.asarray(frame_window, dtype=np.float64)
    if len(window) != config.detect_window:
        raise ValueError(
            f"window length {len(window)} != detect_window {config.detect_window}"
        )
    low = [goertzel_power(window, f, config.sample_rate) for f in LOW_FREQS]
    high = [goertzel_power(window, f, config.sample_rate) for f in HIGH_FREQS]

    def margin(powers: list[float]) -> tuple[int, float]:
        best = max(range(len(powers)), key=powers.__getitem__)
        others = sum(powers) - powers[best]
        if others <= 0.0:
            return best, math.inf if powers[best] > 0.0 else 0.0
        return best, powers[best] / (config.power_ratio_threshold * others)

    row, m_low = margin(low)
    col, m_high = margin(high)
    if m_low <= 1.0 or m_high <= 1.0:
        return None
    if low[row] <= 0.0 or high[col] <= 0.0:
        return None
    twist_db = 10.0 * math.log10(low[row] / high[col])
    if abs(twist_db) > config.twist_limit_db:
        return None
    return Detection(_KEYPAD[row][col], min(m_low, m_high))


class StreamDecoder:
    """Window-by-window decoder with 2-window debounce and repeat suppression.

    A symbol is emitted once two consecutive windows agree on it; further
    windows of the same symbol are swallowed until a no-detection window
    (silence or noise) re-arms the decoder.
    """

    def __init__(self, config: DtmfConfig = DtmfConfig()):
        config.validate()
        self.config = config
        self._prev: Optional[str] = None
        self._run = 0
        self._latched: Optional[str] = None

    def reset(self) -> None:
        """Equivalent to pushing a silent window: clears debounce and latch."""
        self._prev = None
        self._run = 0
        self._latched = None

    def push_window(self, window: Sequence[float] | np.ndarray) -> Optional[str]:
        det = detect_symbol(window, self.config)
        if det is None:
            self.reset()
            return None
        if det.symbol == self._prev:
            self._run += 1
        else:
            self._run = 1
            self._prev = det.symbol
        if self._run >= 2 and det.symbol != self._latched:
            self._latched = det.symbol
            return det.symbol
        return None


def decode_stream(
    samples: Sequence[float] | np.ndarray, config: DtmfConfig = DtmfConfig()
) -> list[str]:
    """Decode a whole buffer by sliding non-overlapping detect windows over it."""
    x = np.asarray(samples, dtype=np.float64)
    decoder = StreamDecoder(config)
    out: list[str] = []
    w = config.detect_window
    for start in range(0, len(x) - w + 1, w):
        sym = decoder.push_window(x[start : start + w])
        if sym is not None:
            out.append(sym)
    return out


def write_wav(path: str, frame: ToneFrame) -> None:
    """Write mono 16-bit signed little-endian PCM."""
    pcm = np.clip(np.round(frame.samples * 32767.0), -32768, 32767).astype("<i2")
    with wave.open(path, "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(frame.sample_rate)
        wf.writeframes(pcm.tobytes())


def read_wav(path: str) -> ToneFrame:
    with wave.open(path, "rb") as wf:
        if wf.getnchannels() != 1 or wf.getsampwidth() != 2:
            raise ValueError("expected mono 16-bit PCM WAV")
        rate = wf.getframerate()
        raw = wf.readframes(wf.getnframes())
    samples = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32767.0
    return ToneFrame(samples=samples, sample_rate=rate)
