"""JSON/CSV/text rendering shared by the CLI and the demo scripts.

Rationals are written as "p/q" strings so they survive a JSON round trip;
floats use Python's shortest round-trip repr.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from fractions import Fraction

import numpy as np

from .intset import IntegerSet, RationalSum


def to_jsonable(obj):
    if isinstance(obj, (Fraction, RationalSum)):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, IntegerSet):
        return obj.tolist()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def parse_rational(text: str) -> Fraction:
    """Inverse of the "p/q" encoding."""
    return Fraction(text)


def dumps_json(payload) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=False) + "\n"


def dumps_csv(rows: list[dict]) -> str:
    """One line per row; nested lists are space-joined."""
    rows = [to_jsonable(r) for r in rows]
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: " ".join(map(str, v)) if isinstance(v, list) else v for k, v in r.items()})
    return buf.getvalue()


def dumps_text(rows: list[dict]) -> str:
    rows = [to_jsonable(r) for r in rows]
    if not rows:
        return ""
    keys = list(rows[0].keys())
    cells = [[_cell(r[k]) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list):
        return " ".join(map(str, v))
    if isinstance(v, str) and len(v) > 40:
        return v[:37] + "..."
    return str(v)
