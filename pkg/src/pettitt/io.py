"""CSV input for observed series.

Accepted layout: UTF-8 text, an optional single header line (detected by a
non-numeric first field), then one row per observation with either one
column (value) or two columns (label, value).  Labels are opaque strings
carried through to reports; rows of one-column files are labeled by their
1-based position.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import InputError

__all__ = ["read_series_csv"]


def _to_float(token: str) -> float | None:
    try:
        return float(token)
    except ValueError:
        return None


def read_series_csv(path) -> tuple[list[str], np.ndarray]:
    """Return (labels, values) from a series CSV."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc

    labels: list[str] = []
    values: list[float] = []
    rows = [
        (lineno, row)
        for lineno, row in enumerate(csv.reader(text.splitlines()), start=1)
        if row and any(field.strip() for field in row)
    ]
    if not rows:
        raise InputError(f"{path}: no data rows")

    first_lineno, first_row = rows[0]
    has_header = _to_float(first_row[-1].strip()) is None
    if has_header:
        rows = rows[1:]
        if not rows:
            raise InputError(f"{path}: header only, no data rows (line {first_lineno})")

    for lineno, row in rows:
        fields = [f.strip() for f in row]
        if len(fields) == 1:
            label, token = str(len(values) + 1), fields[0]
        elif len(fields) == 2:
            label, token = fields
        else:
            raise InputError(
                f"{path}: expected 1 or 2 columns, got {len(fields)} (line {lineno})"
            )
        value = _to_float(token)
        if value is None:
            raise InputError(f"{path}: non-numeric value {token!r} (line {lineno})")
        labels.append(label)
        values.append(value)

    return labels, np.asarray(values, dtype=np.float64)
