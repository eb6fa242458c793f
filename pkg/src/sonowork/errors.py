"""Domain errors shared by every sonowork module.

Each error carries a stable machine ``code`` plus a ``detail`` dict so the
HTTP service can emit structured ``{code, message, detail}`` bodies and the
CLI can look up localized message templates by code.
"""

from __future__ import annotations


class SonoworkError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail


# --- ingest ---------------------------------------------------------------

class ParseError(SonoworkError):
    """A delimited-text input could not be parsed into a table."""

    code = "parse_error"


class EmptyInput(ParseError):
    code = "empty_input"

    def __init__(self):
        super().__init__("no data rows in input")


class RaggedRows(ParseError):
    code = "ragged_rows"

    def __init__(self, row: int, expected: int, got: int):
        super().__init__(
            f"row {row}: expected {expected} cells, got {got}",
            row=row, expected=expected, got=got,
        )
        self.row = row


class NonNumericCell(ParseError):
    code = "non_numeric_cell"

    def __init__(self, row: int, column: str, value: str):
        super().__init__(
            f"row {row}, column {column!r}: not a number: {value!r}",
            row=row, column=column, value=value,
        )
        self.row = row
        self.column = column


class NegativeWeight(ParseError):
    code = "negative_weight"

    def __init__(self, row: int, value: float):
        super().__init__(f"row {row}: negative event weight {value}", row=row, value=value)
        self.row = row


class BadEventColumns(ParseError):
    code = "bad_event_columns"

    def __init__(self, got: int):
        super().__init__(f"event input needs exactly 2 columns, got {got}", got=got)


class UnknownColumn(SonoworkError):
    code = "unknown_column"

    def __init__(self, name: str, available: list[str]):
        super().__init__(f"no column named {name!r}", name=name, available=available)
        self.name = name


class EmptyTable(SonoworkError):
    code = "empty_table"

    def __init__(self):
        super().__init__("table has no rows")


# --- transform ------------------------------------------------------------

class AllNaN(SonoworkError):
    code = "all_nan"

    def __init__(self):
        super().__init__("series has no finite values")


class NotNormalized(SonoworkError):
    code = "not_normalized"

    def __init__(self, value: float):
        super().__init__(f"value {value} outside [0, 1]; normalize first", value=value)


class BadWindow(SonoworkError):
    code = "bad_window"

    def __init__(self, window: int, length: int):
        super().__init__(
            f"smoothing window {window} invalid for series of length {length}",
            window=window, length=length,
        )


class BadRange(SonoworkError):
    code = "bad_range"

    def __init__(self, lo: int, hi: int, length: int):
        super().__init__(
            f"cut range [{lo}, {hi}] invalid for series of length {length}",
            lo=lo, hi=hi, length=length,
        )


class InvalidTransformSpec(SonoworkError):
    """Structurally invalid transform pipeline description."""

    code = "invalid_transform_spec"

    def __init__(self, reason: str):
        super().__init__(f"invalid transform spec: {reason}", reason=reason)


class PipelineStepError(SonoworkError):
    """A pipeline step failed; wraps the step's own error with its index."""

    code = "pipeline_step_error"

    def __init__(self, step: int, op: str, cause: SonoworkError):
        super().__init__(
            f"step {step} ({op}): {cause}",
            step=step, op=op, cause=cause.code, cause_detail=cause.detail,
        )
        self.step = step
        self.op = op
        self.cause = cause


# --- synth ----------------------------------------------------------------

class InvalidConfig(SonoworkError):
    code = "invalid_config"

    def __init__(self, reason: str):
        super().__init__(f"invalid sonification config: {reason}", reason=reason)


class OutOfRange(SonoworkError):
    code = "out_of_range"

    def __init__(self, value: float):
        super().__init__(f"value {value} outside [0, 1]", value=value)


class BadFrequency(SonoworkError):
    code = "bad_frequency"

    def __init__(self, freq: float, nyquist: float):
        super().__init__(f"frequency {freq} Hz outside [0, {nyquist}) Hz", freq=freq, nyquist=nyquist)


class EmptySeries(SonoworkError):
    code = "empty_series"

    def __init__(self):
        super().__init__("series has no points")


class BadTimeline(SonoworkError):
    code = "bad_timeline"

    def __init__(self, timeline: float):
        super().__init__(f"timeline must be positive, got {timeline}", timeline=timeline)


class TooShort(SonoworkError):
    code = "too_short"

    def __init__(self, length: int):
        super().__init__(f"segment of {length} samples too short to estimate a frequency", length=length)


# --- training -------------------------------------------------------------

class BadBlock(SonoworkError):
    code = "bad_block"

    def __init__(self, block: int):
        super().__init__(f"training block must be 1, 2 or 3, got {block}", block=block)


class IllegalEvent(SonoworkError):
    code = "illegal_event"

    def __init__(self, phase: str, event: str):
        super().__init__(f"event {event!r} not legal in phase {phase!r}", phase=phase, event=event)


class SkipDisabled(SonoworkError):
    code = "skip_disabled"

    def __init__(self):
        super().__init__("skipping the intro is disabled for this session")


class ReplayDisabled(SonoworkError):
    code = "replay_disabled"

    def __init__(self):
        super().__init__("replaying the stimulus is disabled for this session")


class NotCompleted(SonoworkError):
    code = "not_completed"

    def __init__(self, phase: str):
        super().__init__(f"session not completed (phase {phase!r})", phase=phase)


class EmptySession(SonoworkError):
    code = "empty_session"

    def __init__(self):
        super().__init__("session has no stimuli")
