"""Perception-training sessions: stimulus blocks, state machine, scoring.

A session presents generated signals (increasing, decreasing, sine, square)
as sound, collects one arrow-key response per stimulus, gives immediate
feedback and scores the result.  All generation is seeded and deterministic,
and the state machine is a pure function over immutable values.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Union

import numpy as np

from .errors import (
    BadBlock,
    EmptySession,
    IllegalEvent,
    NotCompleted,
    ReplayDisabled,
    SkipDisabled,
)
from .ingest import Series
from .synth import AudioBuffer, SonifyConfig, estimate_freq, sonify_series

STIMULUS_POINTS = 64
DEFAULT_PERIODS = 3
BLOCK_NOISE = {1: 0.0, 2: 0.1, 3: 0.25}


class StimulusClass(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    SINE = "sine"
    SQUARE = "square"


class Key(str, Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"


class Modality(str, Enum):
    AUDIO_ONLY = "audio_only"
    AUDIO_VISUAL = "audio_visual"


class Phase(str, Enum):
    INTRO = "intro"
    PRESENTING = "presenting"
    AWAITING_RESPONSE = "awaiting_response"
    FEEDBACK = "feedback"
    COMPLETED = "completed"


_EXPECTED_KEY = {
    StimulusClass.INCREASING: Key.UP,
    StimulusClass.DECREASING: Key.DOWN,
    StimulusClass.SINE: Key.LEFT,
    StimulusClass.SQUARE: Key.RIGHT,
}


def expected_key(stimulus_class: StimulusClass) -> Key:
    """The arrow key that correctly identifies a stimulus class."""
    return _EXPECTED_KEY[StimulusClass(stimulus_class)]


@dataclass(frozen=True)
class Stimulus:
    id: int
    stimulus_class: StimulusClass
    series: Series
    audio: AudioBuffer
    modality: Modality = Modality.AUDIO_VISUAL


@dataclass(frozen=True)
class ResponseRecord:
    stimulus_id: int
    key: Key
    correct: bool
    latency_ms: float

    def to_json(self) -> dict:
        return {
            "stimulus_id": self.stimulus_id,
            "key": self.key.value,
            "correct": self.correct,
            "latency_ms": self.latency_ms,
        }


# --- session events ---------------------------------------------------------

@dataclass(frozen=True)
class Begin:
    pass


@dataclass(frozen=True)
class SkipIntro:
    pass


@dataclass(frozen=True)
class PresentationDone:
    pass


@dataclass(frozen=True)
class KeyPress:
    key: Key
    latency_ms: float = 0.0

    def __post_init__(self):
        if not (self.latency_ms >= 0):
            raise ValueError(f"latency_ms must be >= 0, got {self.latency_ms}")


@dataclass(frozen=True)
class Replay:
    pass


@dataclass(frozen=True)
class FeedbackDone:
    pass


SessionEvent = Union[Begin, SkipIntro, PresentationDone, KeyPress, Replay, FeedbackDone]


@dataclass(frozen=True)
class SessionState:
    """Immutable runner state; advance() is the only way it changes."""

    stimuli: tuple[Stimulus, ...]
    cursor: int = 0
    phase: Phase = Phase.INTRO
    responses: tuple[ResponseRecord, ...] = ()
    allow_skip_intro: bool = True
    allow_replay: bool = True

    @property
    def current(self) -> Stimulus:
        return self.stimuli[self.cursor]

    @property
    def total(self) -> int:
        return len(self.stimuli)


def new_session(
    stimuli: list[Stimulus] | tuple[Stimulus, ...],
    *,
    allow_skip_intro: bool = True,
    allow_replay: bool = True,
) -> SessionState:
    return SessionState(
        stimuli=tuple(stimuli),
        allow_skip_intro=allow_skip_intro,
        allow_replay=allow_replay,
    )


def advance(state: SessionState, event: SessionEvent) -> SessionState:
    """Pure transition function for the present -> respond -> feedback loop.

    Intro -(Begin | SkipIntro)-> Presenting
    Presenting -(PresentationDone)-> AwaitingResponse
    AwaitingResponse -(Replay)-> Presenting (same stimulus)
    AwaitingResponse -(KeyPress)-> Feedback (response recorded)
    Feedback -(FeedbackDone)-> Presenting of the next stimulus, or Completed.

    Anything else raises IllegalEvent; disabled Skip/Replay raise their own
    errors without changing state.
    """
    phase = state.phase
    if phase == Phase.INTRO:
        if isinstance(event, Begin):
            return replace(state, phase=Phase.PRESENTING, cursor=0)
        if isinstance(event, SkipIntro):
            if not state.allow_skip_intro:
                raise SkipDisabled()
            return replace(state, phase=Phase.PRESENTING, cursor=0)
    elif phase == Phase.PRESENTING:
        if isinstance(event, PresentationDone):
            return replace(state, phase=Phase.AWAITING_RESPONSE)
    elif phase == Phase.AWAITING_RESPONSE:
        if isinstance(event, Replay):
            if not state.allow_replay:
                raise ReplayDisabled()
            return replace(state, phase=Phase.PRESENTING)
        if isinstance(event, KeyPress):
            stimulus = state.current
            record = ResponseRecord(
                stimulus_id=stimulus.id,
                key=Key(event.key),
                correct=Key(event.key) == expected_key(stimulus.stimulus_class),
                latency_ms=event.latency_ms,
            )
            return replace(state, phase=Phase.FEEDBACK, responses=state.responses + (record,))
    elif phase == Phase.FEEDBACK:
        if isinstance(event, FeedbackDone):
            if state.cursor + 1 >= state.total:
                return replace(state, phase=Phase.COMPLETED)
            return replace(state, phase=Phase.PRESENTING, cursor=state.cursor + 1)
    raise IllegalEvent(phase.value, type(event).__name__)


# --- stimulus generation ------------------------------------------------------

@dataclass(frozen=True)
class _Recipe:
    stimulus_class: StimulusClass
    periods: int
    noise: float
    noise_seed: int


def _series_for(recipe: _Recipe) -> Series:
    i = np.arange(STIMULUS_POINTS, dtype=np.float64)
    cls = recipe.stimulus_class
    if cls == StimulusClass.INCREASING:
        y = i / (STIMULUS_POINTS - 1)
    elif cls == StimulusClass.DECREASING:
        y = 1.0 - i / (STIMULUS_POINTS - 1)
    elif cls == StimulusClass.SINE:
        y = 0.5 + 0.5 * np.sin(2.0 * np.pi * recipe.periods * i / STIMULUS_POINTS)
    else:
        y = np.where(np.sin(2.0 * np.pi * recipe.periods * i / STIMULUS_POINTS) >= 0.0, 1.0, 0.0)
    if recipe.noise > 0:
        rng = np.random.default_rng(recipe.noise_seed)
        y = np.clip(y + rng.uniform(-recipe.noise, recipe.noise, STIMULUS_POINTS), 0.0, 1.0)
    return Series(x=i.copy(), y=y, label=cls.value)


def iter_block(
    block: int,
    per_class_count: int,
    seed: int,
    config: SonifyConfig,
    modality: Modality = Modality.AUDIO_VISUAL,
) -> Iterator[Stimulus]:
    """Yield the block's stimuli one at a time (audio rendered lazily).

    Block 1 is clean; block 2 adds uniform noise of amplitude 0.1; block 3
    uses noise 0.25 and a randomized period count of 2..5 for the periodic
    classes.  Classes are balanced and the order is shuffled by the seed.
    """
    if block not in BLOCK_NOISE:
        raise BadBlock(block)
    if per_class_count < 1:
        raise ValueError(f"per_class_count must be >= 1, got {per_class_count}")
    noise = BLOCK_NOISE[block]
    rng = np.random.default_rng(seed)
    recipes = []
    for cls in StimulusClass:
        for _ in range(per_class_count):
            periods = int(rng.integers(2, 6)) if block == 3 and cls in (StimulusClass.SINE, StimulusClass.SQUARE) else DEFAULT_PERIODS
            noise_seed = int(rng.integers(0, 2**63)) if noise > 0 else 0
            recipes.append(_Recipe(cls, periods, noise, noise_seed))
    order = rng.permutation(len(recipes))

    def materialize() -> Iterator[Stimulus]:
        for new_id, idx in enumerate(order):
            recipe = recipes[idx]
            series = _series_for(recipe)
            audio = sonify_series(series, config)
            yield Stimulus(
                id=new_id,
                stimulus_class=recipe.stimulus_class,
                series=series,
                audio=audio,
                modality=modality,
            )

    return materialize()


def generate_block(
    block: int,
    per_class_count: int,
    seed: int,
    config: SonifyConfig,
    modality: Modality = Modality.AUDIO_VISUAL,
) -> list[Stimulus]:
    """Deterministic balanced stimulus block; see iter_block."""
    return list(iter_block(block, per_class_count, seed, config, modality))


# --- scoring ------------------------------------------------------------------

@dataclass(frozen=True)
class ClassScore:
    n: int
    correct: int
    pct: float


@dataclass(frozen=True)
class SessionReport:
    total: int
    correct: int
    overall_pct: float
    per_class: dict[StimulusClass, ClassScore]
    median_latency_ms: float

    @property
    def overall_display(self) -> str:
        return format_percentage(self.overall_pct)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "correct": self.correct,
            "overall_pct": self.overall_pct,
            "overall_display": self.overall_display,
            "per_class": {
                cls.value: {"n": s.n, "correct": s.correct, "pct": s.pct}
                for cls, s in self.per_class.items()
            },
            "median_latency_ms": self.median_latency_ms,
        }


def format_percentage(pct: float) -> str:
    """Display form: rounded to the nearest integer, halves up."""
    return f"{int(math.floor(pct + 0.5))}%"


def score_records(pairs: list[tuple[StimulusClass, ResponseRecord]]) -> SessionReport:
    """Score (class, response) pairs; overall_pct keeps full precision."""
    if not pairs:
        raise EmptySession()
    total = len(pairs)
    correct = sum(1 for _, record in pairs if record.correct)
    per_class: dict[StimulusClass, ClassScore] = {}
    for cls in StimulusClass:
        members = [record for c, record in pairs if c == cls]
        if not members:
            continue
        n_correct = sum(1 for record in members if record.correct)
        per_class[cls] = ClassScore(n=len(members), correct=n_correct, pct=100.0 * n_correct / len(members))
    latencies = [record.latency_ms for _, record in pairs]
    return SessionReport(
        total=total,
        correct=correct,
        overall_pct=100.0 * correct / total,
        per_class=per_class,
        median_latency_ms=float(statistics.median(latencies)),
    )


def score_session(state: SessionState) -> SessionReport:
    """Score a completed session: overall, per class, median latency."""
    if state.phase != Phase.COMPLETED:
        raise NotCompleted(state.phase.value)
    if state.total == 0:
        raise EmptySession()
    pairs = [
        (stimulus.stimulus_class, record)
        for stimulus, record in zip(state.stimuli, state.responses)
    ]
    return score_records(pairs)


# --- machine participant -------------------------------------------------------

def synthetic_participant(stimulus: Stimulus) -> Key:
    """Classify a stimulus from its audio alone.

    Tracks per-note frequency with the zero-crossing estimator and counts
    how often the smoothed track alternates between its low and high band:
    one pass is a ramp (direction gives Increasing/Decreasing); several
    passes mean oscillation, with Square and Sine told apart by whether the
    track ever dwells at mid-range frequencies.
    """
    samples = stimulus.audio.samples
    n_points = len(stimulus.series)
    seg = len(samples) // n_points
    if seg < 2:
        return Key.UP
    track = np.array([
        estimate_freq(stimulus.audio, k * seg, (k + 1) * seg) for k in range(n_points)
    ])
    f_lo = track.min()
    f_hi = track.max()
    if f_hi - f_lo <= 0:
        return Key.LEFT
    v = (track - f_lo) / (f_hi - f_lo)
    half = 3  # moving average window 7, clipped at the edges
    smoothed = np.array([
        v[max(0, i - half):min(n_points, i + half + 1)].mean() for i in range(n_points)
    ])
    state = 0
    changes = 0
    for value in smoothed:
        band = 1 if value > 0.7 else (-1 if value < 0.3 else 0)
        if band != 0 and band != state:
            if state != 0:
                changes += 1
            state = band
    if changes <= 1:
        return Key.UP if smoothed[-1] >= smoothed[0] else Key.DOWN
    mid_fraction = float(np.mean((v > 0.3) & (v < 0.7)))
    return Key.RIGHT if mid_fraction < 0.12 else Key.LEFT


def simulate_session(
    block: int,
    per_class_count: int,
    seed: int,
    config: SonifyConfig,
    latency_ms: float = 0.0,
) -> SessionReport:
    """Run the machine participant over a full generated block and score it.

    Streams stimuli so large simulated sessions never hold a whole block of
    rendered audio in memory.
    """
    pairs = []
    for stimulus in iter_block(block, per_class_count, seed, config):
        key = synthetic_participant(stimulus)
        record = ResponseRecord(
            stimulus_id=stimulus.id,
            key=key,
            correct=key == expected_key(stimulus.stimulus_class),
            latency_ms=latency_ms,
        )
        pairs.append((stimulus.stimulus_class, record))
    return score_records(pairs)
