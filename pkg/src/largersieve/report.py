"""CSV and JSON emission with a canonical row order."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path


def _plain(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    if hasattr(value, "numerator") and not isinstance(value, int):
        return str(value)
    return value


def canonical_rows(rows: list, columns: list) -> list:
    return sorted(rows, key=lambda r: tuple(str(r.get(c, "")) for c in columns))


def csv_text(rows: list, columns: list) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in canonical_rows(rows, columns):
        writer.writerow({c: row.get(c, "") for c in columns})
    return buf.getvalue()


def json_text(summary: dict) -> str:
    return json.dumps(_plain(summary), indent=2, sort_keys=True)


def write_outputs(out_dir, name: str, rows: list, columns: list, summary: dict, fmt: str = "both") -> list:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt in ("csv", "both"):
        path = out / f"{name}.csv"
        path.write_text(csv_text(rows, columns), encoding="utf-8")
        written.append(path)
    if fmt in ("json", "both"):
        path = out / f"{name}.json"
        path.write_text(json_text(summary) + "\n", encoding="utf-8")
        written.append(path)
    return written
