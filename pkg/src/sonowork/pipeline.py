"""End-to-end wiring shared by the CLI and the HTTP service.

Keeps the two front ends byte-for-byte equivalent: both run the exact same
select -> transform -> normalize -> render chain.
"""

from __future__ import annotations

from .ingest import Series, Table, select_series
from .synth import AudioBuffer, SonifyConfig, sonify_series
from .transform import TransformSpec, apply_pipeline, normalize


def transformed_series(table: Table, x_col: str | None, y_col: str, spec: TransformSpec) -> Series:
    series = select_series(table, x_col, y_col)
    return apply_pipeline(series, spec)


def prepared_series(table: Table, x_col: str | None, y_col: str, spec: TransformSpec) -> Series:
    """Transformed series, normalized unless the pipeline already ends with normalize."""
    series = transformed_series(table, x_col, y_col, spec)
    if not spec.steps or spec.steps[-1].op != "normalize":
        series = normalize(series)
    return series


def sonified_series(
    table: Table,
    x_col: str | None,
    y_col: str,
    spec: TransformSpec,
    config: SonifyConfig,
) -> tuple[Series, AudioBuffer]:
    series = prepared_series(table, x_col, y_col, spec)
    return series, sonify_series(series, config)
