"""Deterministic JSON and CSV writers.

Documents must survive a parse/re-emit cycle byte for byte: keys are
sorted, floats carry 17 significant digits (enough to round-trip any
double), negative zero is normalized, and non-finite values map to null
in JSON (CSV spells them nan/inf, since CSV is never re-parsed into
floats by the tools here).
"""

from __future__ import annotations

import json
import math
from typing import Any, Sequence


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    return format(x, ".17g")


def _ser(value: Any, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(repr(value))
    elif isinstance(value, float):
        if math.isfinite(value):
            out.append(fmt_float(value))
        else:
            out.append("null")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _ser(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _ser(value[key], out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def canonical_json(doc: Any) -> str:
    """Serialize with sorted keys and round-trip-stable floats."""
    out: list[str] = []
    _ser(doc, out)
    return "".join(out)


def csv_document(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Join cells with commas; floats through fmt_float, strings verbatim."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append(fmt_float(cell))
            elif isinstance(cell, int):
                cells.append(repr(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
