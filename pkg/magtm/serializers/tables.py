# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""
Table Serializers

CSV: one "# key=value,..." metadata line, a header row, then data rows.
JSON: {"meta": {...}, "rows": [...]} with sorted keys.
"""

import csv
import io
from pathlib import Path

from magtm.core import ParameterError, dump_json

FORMATS = ("csv", "json")


def _cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _meta_line(meta: dict) -> str:
    return "# " + ",".join(f"{k}={_cell(meta[k])}" for k in sorted(meta))


def format_table(rows: list, fmt: str = "csv", meta: dict = None) -> str:
    """Render rows (dicts sharing the first row's keys) as CSV or JSON text."""
    meta = meta or {}
    if fmt == "json":
        return dump_json({"meta": meta, "rows": rows})
    if fmt != "csv":
        raise ParameterError(f"unknown table format '{fmt}', expected one of {FORMATS}")

    buf = io.StringIO()
    if meta:
        buf.write(_meta_line(meta) + "\n")
    if rows:
        columns = list(rows[0].keys())
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def write_table(path, rows: list, fmt: str = "csv", meta: dict = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(format_table(rows, fmt, meta))
    return path


def parse_csv_table(text: str):
    """Inverse of format_table for CSV: returns (meta, rows) with string cells."""
    lines = text.splitlines()
    meta = {}
    if lines and lines[0].startswith("# "):
        for item in lines[0][2:].split(","):
            key, _, value = item.partition("=")
            meta[key] = value
        lines = lines[1:]
    rows = list(csv.DictReader(lines))
    return meta, rows


__all__ = ["FORMATS", "format_table", "write_table", "parse_csv_table"]
