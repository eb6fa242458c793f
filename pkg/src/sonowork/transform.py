"""Pure series transforms and the ordered pipeline that applies them.

The nonlinear transforms (log, square, square root) expect input already
normalized to [0, 1] so composition stays closed and pitch mapping stays
simple.  NaN gap markers pass through every transform untouched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllNaN,
    BadRange,
    BadWindow,
    InvalidTransformSpec,
    NotNormalized,
    PipelineStepError,
    SonoworkError,
)
from .ingest import Series


def _finite_or_raise(y: np.ndarray) -> np.ndarray:
    finite = np.isfinite(y)
    if not finite.any():
        raise AllNaN()
    return finite


def _check_normalized(y: np.ndarray, finite: np.ndarray) -> None:
    vals = y[finite]
    bad = (vals < 0.0) | (vals > 1.0)
    if bad.any():
        raise NotNormalized(float(vals[bad][0]))


def normalize(series: Series) -> Series:
    """Map finite y values onto [0, 1]; a constant series maps to 0.5."""
    finite = _finite_or_raise(series.y)
    y = series.y.copy()
    lo = float(y[finite].min())
    hi = float(y[finite].max())
    if lo == hi:
        y[finite] = 0.5
    else:
        y[finite] = (y[finite] - lo) / (hi - lo)
    return Series(x=series.x.copy(), y=y, label=series.label)


def invert(series: Series) -> Series:
    """Flip the series about its own midline: y' = min + max - y."""
    finite = _finite_or_raise(series.y)
    y = series.y.copy()
    lo = float(y[finite].min())
    hi = float(y[finite].max())
    y[finite] = lo + hi - y[finite]
    return Series(x=series.x.copy(), y=y, label=series.label)


def log_scale(series: Series) -> Series:
    """y' = log10(1 + 9y): a monotone [0,1] -> [0,1] compression of highs."""
    finite = _finite_or_raise(series.y)
    _check_normalized(series.y, finite)
    y = series.y.copy()
    y[finite] = np.log10(1.0 + 9.0 * y[finite])
    return Series(x=series.x.copy(), y=y, label=series.label)


def square(series: Series) -> Series:
    """Elementwise y^2 on a normalized series."""
    finite = _finite_or_raise(series.y)
    _check_normalized(series.y, finite)
    return Series(x=series.x.copy(), y=series.y * series.y, label=series.label)


def square_root(series: Series) -> Series:
    """Elementwise sqrt(y) on a normalized series."""
    finite = _finite_or_raise(series.y)
    _check_normalized(series.y, finite)
    return Series(x=series.x.copy(), y=np.sqrt(series.y), label=series.label)


def smooth(series: Series, window: int) -> Series:
    """Centered moving average with the window clipped to the series edges.

    NaN values are excluded from each window's average; a window containing
    only NaN yields NaN.  Window must be odd, >= 1 and <= series length.
    """
    n = len(series)
    if not isinstance(window, (int, np.integer)) or window < 1 or window % 2 == 0 or window > n:
        raise BadWindow(int(window), n)
    half = window // 2
    finite = np.isfinite(series.y)
    vals = np.where(finite, series.y, 0.0)
    cum = np.concatenate(([0.0], np.cumsum(vals)))
    cnt = np.concatenate(([0], np.cumsum(finite.astype(np.int64))))
    idx = np.arange(n)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half, n - 1)
    sums = cum[hi + 1] - cum[lo]
    counts = cnt[hi + 1] - cnt[lo]
    y = np.full(n, np.nan)
    nonzero = counts > 0
    y[nonzero] = sums[nonzero] / counts[nonzero]
    return Series(x=series.x.copy(), y=y, label=series.label)


def cut(series: Series, lo: int, hi: int) -> Series:
    """Inclusive sub-series over indices [lo, hi]."""
    n = len(series)
    if not (0 <= lo <= hi < n):
        raise BadRange(lo, hi, n)
    return Series(x=series.x[lo:hi + 1].copy(), y=series.y[lo:hi + 1].copy(), label=series.label)


# --- pipeline spec ----------------------------------------------------------

_PARAMLESS_OPS = ("normalize", "invert", "log", "square", "sqrt")
KNOWN_OPS = _PARAMLESS_OPS + ("smooth", "cut")


@dataclass(frozen=True)
class Step:
    """One tagged pipeline step; params depend on the op."""

    op: str
    window: int | None = None
    lo: int | None = None
    hi: int | None = None

    def to_json(self) -> dict:
        if self.op == "smooth":
            return {"op": "smooth", "window": self.window}
        if self.op == "cut":
            return {"op": "cut", "lo": self.lo, "hi": self.hi}
        return {"op": self.op}


@dataclass(frozen=True)
class TransformSpec:
    """Ordered pipeline of transforms, shared by CLI, service and web UI."""

    steps: tuple[Step, ...] = ()

    def to_json(self) -> list[dict]:
        return [step.to_json() for step in self.steps]

    @classmethod
    def from_json(cls, data: list | str) -> "TransformSpec":
        """Build a spec from a JSON array of tagged steps, validating structure.

        Structural errors (unknown op, bad parameter types, even smoothing
        window) raise InvalidTransformSpec.  Range checks that depend on the
        series length happen later, when the pipeline is applied.
        """
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InvalidTransformSpec(f"not valid JSON: {exc}") from None
        if not isinstance(data, list):
            raise InvalidTransformSpec("expected a JSON array of steps")
        steps = []
        for i, item in enumerate(data):
            if not isinstance(item, dict) or "op" not in item:
                raise InvalidTransformSpec(f"step {i}: expected an object with an 'op' key")
            op = item["op"]
            if op not in KNOWN_OPS:
                raise InvalidTransformSpec(f"step {i}: unknown op {op!r}")
            extras = set(item) - {"op", "window", "lo", "hi"}
            if extras:
                raise InvalidTransformSpec(f"step {i}: unexpected keys {sorted(extras)}")
            if op == "smooth":
                window = item.get("window")
                if not isinstance(window, int) or isinstance(window, bool) or window < 1 or window % 2 == 0:
                    raise InvalidTransformSpec(f"step {i}: smooth needs an odd positive integer window")
                steps.append(Step(op="smooth", window=window))
            elif op == "cut":
                lo, hi = item.get("lo"), item.get("hi")
                for name, v in (("lo", lo), ("hi", hi)):
                    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                        raise InvalidTransformSpec(f"step {i}: cut needs non-negative integer {name!r}")
                steps.append(Step(op="cut", lo=lo, hi=hi))
            else:
                if set(item) != {"op"}:
                    raise InvalidTransformSpec(f"step {i}: op {op!r} takes no parameters")
                steps.append(Step(op=op))
        return cls(steps=tuple(steps))


def apply_step(series: Series, step: Step) -> Series:
    if step.op == "normalize":
        return normalize(series)
    if step.op == "invert":
        return invert(series)
    if step.op == "log":
        return log_scale(series)
    if step.op == "square":
        return square(series)
    if step.op == "sqrt":
        return square_root(series)
    if step.op == "smooth":
        return smooth(series, step.window)
    if step.op == "cut":
        return cut(series, step.lo, step.hi)
    raise InvalidTransformSpec(f"unknown op {step.op!r}")


def apply_pipeline(series: Series, spec: TransformSpec) -> Series:
    """Apply steps left to right; a failing step's error carries its index."""
    for i, step in enumerate(spec.steps):
        try:
            series = apply_step(series, step)
        except SonoworkError as exc:
            raise PipelineStepError(i, step.op, exc) from exc
    return series
