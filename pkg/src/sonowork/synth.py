"""Sound rendering: pitch mapping, note synthesis, event pings, WAV and SVG.

Everything here is deterministic: equal inputs give byte-identical WAV and
SVG output.  Notes reset phase and wear short linear attack/release ramps,
which keeps them click-free and lets the zero-crossing estimator measure
each note's frequency in isolation.
"""

from __future__ import annotations

import dataclasses
import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadFrequency,
    BadTimeline,
    EmptySeries,
    InvalidConfig,
    NotNormalized,
    OutOfRange,
    TooShort,
)
from .ingest import EventList, Series

WAVEFORMS = ("sine", "square")
MAPPINGS = ("linear", "logarithmic")

EVENT_PING_SECONDS = 0.05


@dataclass(frozen=True)
class SonifyConfig:
    """Synthesis parameters; defaults keep tones in a comfortable two-octave band."""

    waveform: str = "sine"
    mapping: str = "linear"
    f_min: float = 220.0
    f_max: float = 880.0
    note_duration: float = 0.1
    sample_rate: int = 44100
    amplitude: float = 0.8
    envelope_ramp: float = 0.005

    def __post_init__(self):
        if self.waveform not in WAVEFORMS:
            raise InvalidConfig(f"waveform must be one of {WAVEFORMS}, got {self.waveform!r}")
        if self.mapping not in MAPPINGS:
            raise InvalidConfig(f"mapping must be one of {MAPPINGS}, got {self.mapping!r}")
        if not isinstance(self.sample_rate, int) or self.sample_rate <= 0:
            raise InvalidConfig(f"sample_rate must be a positive integer, got {self.sample_rate!r}")
        if not (20.0 <= self.f_min < self.f_max <= 0.45 * self.sample_rate):
            raise InvalidConfig(
                f"need 20 <= f_min < f_max <= 0.45*sample_rate, got f_min={self.f_min}, "
                f"f_max={self.f_max}, sample_rate={self.sample_rate}"
            )
        if self.envelope_ramp < 0:
            raise InvalidConfig(f"envelope_ramp must be >= 0, got {self.envelope_ramp}")
        if self.note_duration < 2 * self.envelope_ramp:
            raise InvalidConfig(
                f"note_duration must be >= 2*envelope_ramp, got {self.note_duration} < {2 * self.envelope_ramp}"
            )
        if not (0 < self.amplitude <= 1):
            raise InvalidConfig(f"amplitude must be in (0, 1], got {self.amplitude}")

    def to_json(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "SonifyConfig":
        if not isinstance(data, dict):
            raise InvalidConfig("expected a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        extras = set(data) - known
        if extras:
            raise InvalidConfig(f"unknown config keys {sorted(extras)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidConfig(str(exc)) from None


@dataclass(frozen=True)
class AudioBuffer:
    """Mono float64 PCM in [-1, 1]."""

    sample_rate: int
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        object.__setattr__(self, "samples", samples)
        if len(samples) and float(np.abs(samples).max()) > 1.0:
            raise ValueError("samples exceed [-1, 1]")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def map_value_to_freq(v: float, config: SonifyConfig) -> float:
    """Map a normalized value in [0, 1] to a frequency between f_min and f_max.

    Linear: f_min + v*(f_max - f_min).  Logarithmic: f_min*(f_max/f_min)**v.
    The endpoints are exact in both mappings.
    """
    if not (0.0 <= v <= 1.0):  # also rejects NaN
        raise OutOfRange(float(v))
    if v == 0.0:
        return config.f_min
    if v == 1.0:
        return config.f_max
    if config.mapping == "linear":
        return config.f_min + v * (config.f_max - config.f_min)
    return config.f_min * (config.f_max / config.f_min) ** v


def _envelope(n: int, ramp_samples: int) -> np.ndarray:
    """Linear attack/release ramp, clipped to half the note length."""
    env = np.ones(n)
    ramp = min(ramp_samples, n // 2)
    if ramp > 0:
        slope = np.arange(ramp) / ramp
        env[:ramp] = slope
        env[n - ramp:] = slope[::-1]
    return env


def render_note(freq: float, config: SonifyConfig, duration: float) -> AudioBuffer:
    """Render one enveloped note; phase starts at zero."""
    nyquist = config.sample_rate / 2.0
    if not (0.0 <= freq < nyquist):
        raise BadFrequency(float(freq), nyquist)
    if duration < 0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    n = int(round(duration * config.sample_rate))
    if n == 0:
        return AudioBuffer(config.sample_rate, np.zeros(0))
    t = np.arange(n) / config.sample_rate
    wave = np.sin(2.0 * np.pi * freq * t)
    if config.waveform == "square":
        wave = np.sign(wave)
    env = _envelope(n, int(round(config.envelope_ramp * config.sample_rate)))
    return AudioBuffer(config.sample_rate, config.amplitude * env * wave)


def sonify_series(series: Series, config: SonifyConfig) -> AudioBuffer:
    """One note per point, in x order; NaN points render as silence."""
    y = series.y
    if len(y) == 0:
        raise EmptySeries()
    finite = np.isfinite(y)
    if finite.any():
        vals = y[finite]
        if (vals < 0).any() or (vals > 1).any():
            bad = vals[(vals < 0) | (vals > 1)][0]
            raise NotNormalized(float(bad))
    note_n = int(round(config.note_duration * config.sample_rate))
    out = np.zeros(len(y) * note_n)
    for i, v in enumerate(y):
        if finite[i]:
            freq = map_value_to_freq(float(v), config)
            out[i * note_n:(i + 1) * note_n] = render_note(freq, config, config.note_duration).samples
    return AudioBuffer(config.sample_rate, out)


def sonify_events(events: EventList, timeline: float, config: SonifyConfig) -> AudioBuffer:
    """Short sine pings on a silent timeline; event times rescale to fit.

    Ping frequency follows weight/max_weight through the pitch mapping.
    Overlapping pings sum and the result is hard-clipped to [-1, 1].
    An empty event list yields pure silence.
    """
    if not (timeline > 0):
        raise BadTimeline(float(timeline))
    n = int(round(timeline * config.sample_rate))
    out = np.zeros(n)
    if len(events) == 0:
        return AudioBuffer(config.sample_rate, out)
    t0 = float(events.times[0])
    t1 = float(events.times[-1])
    max_w = float(events.weights.max())
    ping_config = dataclasses.replace(config, waveform="sine")
    for time, weight in zip(events.times, events.weights):
        scaled = (float(time) - t0) / (t1 - t0) * timeline if t1 > t0 else 0.0
        start = int(round(scaled * config.sample_rate))
        if start >= n:
            continue
        v = float(weight) / max_w if max_w > 0 else 0.0
        ping = render_note(map_value_to_freq(v, config), ping_config, EVENT_PING_SECONDS).samples
        stop = min(n, start + len(ping))
        out[start:stop] += ping[:stop - start]
    np.clip(out, -1.0, 1.0, out=out)
    return AudioBuffer(config.sample_rate, out)


def write_wav(buffer: AudioBuffer) -> bytes:
    """Encode as RIFF/WAVE PCM 16-bit signed little-endian mono.

    Quantization is round(s*32767) (ties to even) clamped to int16, so the
    output is byte-exact across runs and platforms and q(-1.0) == -32767,
    symmetric with q(1.0) == 32767.
    """
    pcm = np.clip(np.rint(buffer.samples * 32767.0), -32768, 32767).astype("<i2")
    data = pcm.tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(data), b"WAVE",
        b"fmt ", 16, 1, 1,
        buffer.sample_rate, buffer.sample_rate * 2, 2, 16,
        b"data", len(data),
    )
    return header + data


def estimate_freq(buffer: AudioBuffer, start: int = 0, end: int | None = None) -> float:
    """Frequency of a tone segment from positive-going zero crossings.

    Counts transitions s[i] <= 0 < s[i+1] per unit time.  This is the test
    oracle for rendered notes and the ear of the synthetic participant.
    """
    segment = buffer.samples[start:end]
    if len(segment) < 2:
        raise TooShort(len(segment))
    crossings = int(np.count_nonzero((segment[:-1] <= 0.0) & (segment[1:] > 0.0)))
    return crossings * buffer.sample_rate / len(segment)


def render_plot(series: Series, width: int = 800, height: int = 400) -> bytes:
    """Deterministic SVG line plot; NaN points are left out of the polyline."""
    if width < 64 or height < 64:
        raise ValueError(f"plot size must be at least 64x64, got {width}x{height}")
    if len(series) == 0:
        raise EmptySeries()
    finite = np.isfinite(series.y)
    xs = series.x[finite]
    ys = series.y[finite]

    pad = 40.0
    x_lo, x_hi = (float(xs.min()), float(xs.max())) if len(xs) else (0.0, 1.0)
    y_lo, y_hi = (float(ys.min()), float(ys.max())) if len(ys) else (0.0, 1.0)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    def px(x: float) -> float:
        return pad + (x - x_lo) / (x_hi - x_lo) * (width - 2 * pad)

    def py(y: float) -> float:
        return height - pad - (y - y_lo) / (y_hi - y_lo) * (height - 2 * pad)

    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    label = series.label or "series"
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" role="img" aria-label="Line plot of {label}">'
        f"<title>{label}</title>"
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>'
        f'<line x1="{pad:.2f}" y1="{height - pad:.2f}" x2="{width - pad:.2f}" y2="{height - pad:.2f}" '
        f'stroke="black" stroke-width="1"/>'
        f'<line x1="{pad:.2f}" y1="{pad:.2f}" x2="{pad:.2f}" y2="{height - pad:.2f}" '
        f'stroke="black" stroke-width="1"/>'
        f'<text x="{pad:.2f}" y="{height - pad / 4:.2f}" font-size="12">{x_lo:g}</text>'
        f'<text x="{width - pad:.2f}" y="{height - pad / 4:.2f}" font-size="12" text-anchor="end">{x_hi:g}</text>'
        f'<text x="{pad / 4:.2f}" y="{height - pad:.2f}" font-size="12">{y_lo:g}</text>'
        f'<text x="{pad / 4:.2f}" y="{pad:.2f}" font-size="12">{y_hi:g}</text>'
        f'<polyline fill="none" stroke="#1f6fb2" stroke-width="1.5" points="{points}"/>'
        f"</svg>"
    )
    return svg.encode("utf-8")
