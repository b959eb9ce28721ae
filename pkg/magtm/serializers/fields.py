# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""
Sampled Field Serializers

CSV rows (i_w, i_theta, re, im) plus a sidecar <file>.json header with the grid.
"""

import csv
from pathlib import Path

import numpy as np

from magtm.core import GridError, load_json, save_json
from magtm.cylinder import CONVENTION_VERSION, CylinderGrid, SampledField

NORMALIZATION = "u = (1/2pi) sum u_n e^{in theta}"
FIELD_COLUMNS = ("i_w", "i_theta", "re", "im")


def _header_path(path: Path) -> Path:
    return path.with_name(path.name + ".json")


def write_field(path, field: SampledField) -> Path:
    """Write the field CSV and its JSON header; returns the CSV path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(FIELD_COLUMNS)
        for (i, j), value in np.ndenumerate(field.values):
            writer.writerow([i, j, repr(float(value.real)), repr(float(value.imag))])

    save_json(
        _header_path(path),
        {
            "convention_version": CONVENTION_VERSION,
            "grid": field.grid.to_dict(),
            "normalization": NORMALIZATION,
        },
    )
    return path


def read_field(path) -> SampledField:
    path = Path(path)
    header = load_json(_header_path(path))
    if not header:
        raise GridError(f"missing or unreadable field header for {path}")
    if header.get("convention_version") != CONVENTION_VERSION:
        raise GridError(
            f"field convention {header.get('convention_version')} != {CONVENTION_VERSION}"
        )

    grid = CylinderGrid(**header["grid"])
    values = np.zeros((grid.n_w, grid.n_theta), dtype=complex)
    seen = 0
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != FIELD_COLUMNS:
            raise GridError(f"unexpected field columns {reader.fieldnames}")
        for row in reader:
            i, j = int(row["i_w"]), int(row["i_theta"])
            if not (0 <= i < grid.n_w and 0 <= j < grid.n_theta):
                raise GridError(f"node ({i}, {j}) outside the grid")
            values[i, j] = complex(float(row["re"]), float(row["im"]))
            seen += 1

    if seen != grid.n_w * grid.n_theta:
        raise GridError(f"expected {grid.n_w * grid.n_theta} rows, found {seen}")
    return SampledField(grid, values)


__all__ = ["write_field", "read_field", "NORMALIZATION", "FIELD_COLUMNS"]
