"""sonowork: a deterministic, accessible sonification workbench.

Parse tabular data, transform it, render it as sound (pitch-mapped series
or discrete event pings) and run scored perception-training sessions.
"""

from .ingest import EventList, Series, Table, parse_events, parse_table, select_series
from .synth import AudioBuffer, SonifyConfig, estimate_freq, map_value_to_freq, render_note, render_plot, sonify_events, sonify_series, write_wav
from .training import (
    Key,
    Modality,
    Phase,
    SessionReport,
    SessionState,
    Stimulus,
    StimulusClass,
    advance,
    expected_key,
    generate_block,
    score_session,
    simulate_session,
    synthetic_participant,
)
from .transform import TransformSpec, apply_pipeline

__version__ = "0.1.0"

__all__ = [
    "AudioBuffer",
    "EventList",
    "Key",
    "Modality",
    "Phase",
    "Series",
    "SessionReport",
    "SessionState",
    "SonifyConfig",
    "Stimulus",
    "StimulusClass",
    "Table",
    "TransformSpec",
    "advance",
    "apply_pipeline",
    "estimate_freq",
    "expected_key",
    "generate_block",
    "map_value_to_freq",
    "parse_events",
    "parse_table",
    "render_note",
    "render_plot",
    "score_session",
    "select_series",
    "simulate_session",
    "sonify_events",
    "sonify_series",
    "synthetic_participant",
    "write_wav",
]
