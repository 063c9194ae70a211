"""Deterministic CSV/JSON table emission.

Floats are rendered with a frozen 12-significant-digit format in both
encodings, so identical inputs always produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

FLOAT_FORMAT = "%.12g"


def fmt_float(x: float) -> str:
    return FLOAT_FORMAT % (x,)


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if v is None:
        return ""
    return str(v)


def rows_to_csv(rows: Sequence[dict[str, Any]], fields: Sequence[str]) -> str:
    """RFC-4180-style quoting, '\\n' line endings, header row first."""
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_csv_cell(row[f]) for f in fields])
    return buf.getvalue()


def _json_token(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)  # %.12g output is a valid JSON number
    if v is None:
        return "null"
    if isinstance(v, int):
        return str(v)
    return json.dumps(v)


def rows_to_json(rows: Sequence[dict[str, Any]], fields: Sequence[str]) -> str:
    """JSON array of flat objects with the same float formatting as the CSV."""
    if not rows:
        return "[]\n"
    parts = []
    for row in rows:
        items = ", ".join(f"{json.dumps(f)}: {_json_token(row[f])}" for f in fields)
        parts.append("  {" + items + "}")
    return "[\n" + ",\n".join(parts) + "\n]\n"
