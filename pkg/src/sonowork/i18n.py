"""English and Spanish message catalogs for user-facing text.

Both catalogs carry exactly the same key set; the active language comes from
SONOWORK_LANG (en by default).  Machine-readable output (summaries, JSON) is
never localized, only messages meant for humans.
"""

from __future__ import annotations

import os

from .errors import PipelineStepError, SonoworkError

LANGUAGES = ("en", "es")

CATALOG: dict[str, dict[str, str]] = {
    "en": {
        "empty_input": "no data rows in input",
        "ragged_rows": "row {row}: expected {expected} cells, got {got}",
        "non_numeric_cell": "row {row}, column '{column}': not a number: '{value}'",
        "negative_weight": "row {row}: negative event weight {value}",
        "bad_event_columns": "event input needs exactly 2 columns, got {got}",
        "unknown_column": "no column named '{name}'",
        "empty_table": "table has no rows",
        "all_nan": "series has no finite values",
        "not_normalized": "value {value} outside [0, 1]; normalize first",
        "bad_window": "smoothing window {window} invalid for series of length {length}",
        "bad_range": "cut range [{lo}, {hi}] invalid for series of length {length}",
        "invalid_transform_spec": "invalid transform spec: {reason}",
        "pipeline_step_error": "step {step} ({op}): {cause_message}",
        "invalid_config": "invalid sonification config: {reason}",
        "out_of_range": "value {value} outside [0, 1]",
        "bad_frequency": "frequency {freq} Hz outside [0, {nyquist}) Hz",
        "empty_series": "series has no points",
        "bad_timeline": "timeline must be positive, got {timeline}",
        "too_short": "segment of {length} samples too short to estimate a frequency",
        "bad_block": "training block must be 1, 2 or 3, got {block}",
        "illegal_event": "event '{event}' not legal in phase '{phase}'",
        "skip_disabled": "skipping the intro is disabled for this session",
        "replay_disabled": "replaying the stimulus is disabled for this session",
        "not_completed": "session not completed (phase '{phase}')",
        "empty_session": "session has no stimuli",
        "cli.error_prefix": "error",
        "cli.cannot_read": "cannot read '{path}': {reason}",
        "cli.cannot_write": "cannot write '{path}': {reason}",
    },
    "es": {
        "empty_input": "la entrada no tiene filas de datos",
        "ragged_rows": "fila {row}: se esperaban {expected} celdas, hay {got}",
        "non_numeric_cell": "fila {row}, columna '{column}': no es un número: '{value}'",
        "negative_weight": "fila {row}: peso de evento negativo {value}",
        "bad_event_columns": "la entrada de eventos necesita exactamente 2 columnas, hay {got}",
        "unknown_column": "no existe la columna '{name}'",
        "empty_table": "la tabla no tiene filas",
        "all_nan": "la serie no tiene valores finitos",
        "not_normalized": "valor {value} fuera de [0, 1]; normalice primero",
        "bad_window": "ventana de suavizado {window} inválida para una serie de largo {length}",
        "bad_range": "rango de corte [{lo}, {hi}] inválido para una serie de largo {length}",
        "invalid_transform_spec": "especificación de transformaciones inválida: {reason}",
        "pipeline_step_error": "paso {step} ({op}): {cause_message}",
        "invalid_config": "configuración de sonido inválida: {reason}",
        "out_of_range": "valor {value} fuera de [0, 1]",
        "bad_frequency": "frecuencia {freq} Hz fuera de [0, {nyquist}) Hz",
        "empty_series": "la serie no tiene puntos",
        "bad_timeline": "la duración de la línea de tiempo debe ser positiva, se recibió {timeline}",
        "too_short": "segmento de {length} muestras demasiado corto para estimar una frecuencia",
        "bad_block": "el bloque de entrenamiento debe ser 1, 2 o 3, se recibió {block}",
        "illegal_event": "el evento '{event}' no es válido en la fase '{phase}'",
        "skip_disabled": "saltear la introducción está deshabilitado en esta sesión",
        "replay_disabled": "repetir el estímulo está deshabilitado en esta sesión",
        "not_completed": "la sesión no está completa (fase '{phase}')",
        "empty_session": "la sesión no tiene estímulos",
        "cli.error_prefix": "error",
        "cli.cannot_read": "no se puede leer '{path}': {reason}",
        "cli.cannot_write": "no se puede escribir '{path}': {reason}",
    },
}


def current_language() -> str:
    lang = os.environ.get("SONOWORK_LANG", "en").lower()
    return lang if lang in LANGUAGES else "en"


def message(key: str, lang: str | None = None, **kwargs) -> str:
    lang = lang or current_language()
    template = CATALOG[lang].get(key) or CATALOG["en"].get(key)
    if template is None:
        return key
    return template.format(**kwargs)


def describe_error(exc: SonoworkError, lang: str | None = None) -> str:
    """Localized human-readable description of a domain error."""
    lang = lang or current_language()
    if isinstance(exc, PipelineStepError):
        return message(
            "pipeline_step_error",
            lang,
            step=exc.step,
            op=exc.op,
            cause_message=describe_error(exc.cause, lang),
        )
    template = CATALOG[lang].get(exc.code)
    if template is None:
        return str(exc)
    return template.format(**exc.detail)
