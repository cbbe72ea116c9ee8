"""Tab-separated output tables and the JSON run manifest.

Tables are written with a single header line naming the columns, then one
row per record.  Floats use the %.17g format, which round-trips IEEE
doubles exactly, so reading a table back reproduces the numbers bit for
bit and repeated runs of the same pipeline produce identical files.
"""

from __future__ import annotations

import json

import numpy as np

FLOAT_FMT = "%.17g"


def format_value(value) -> str:
    """One table cell: integers stay integral, floats use FLOAT_FMT."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if v == 0.0:
        v = 0.0  # drop the sign of negative zero
    return FLOAT_FMT % v


def write_table(path, names, columns) -> int:
    """Write named columns of equal length; returns the number of rows.

    ``columns`` is one sequence per name; values may mix integers and
    floats (each cell formats on its own).
    """
    names = list(names)
    columns = [np.asarray(col) for col in columns]
    if len(names) != len(columns):
        raise ValueError(
            f"{len(names)} names for {len(columns)} columns"
        )
    n_rows = columns[0].shape[0] if columns else 0
    for name, col in zip(names, columns):
        if col.ndim != 1 or col.shape[0] != n_rows:
            raise ValueError(f"column {name!r} is not a length-{n_rows} 1-d "
                             "sequence")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(names) + "\n")
        for i in range(n_rows):
            fh.write("\t".join(format_value(col[i]) for col in columns)
                     + "\n")
    return n_rows


def read_table(path) -> tuple[list[str], np.ndarray]:
    """Read a table written by :func:`write_table`.

    Returns (names, data) with data shaped (rows, columns) as floats; NaN
    cells come back as NaN.
    """
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if not header:
            raise ValueError(f"{path}: missing header line")
        names = header.split("\t")
        rows = []
        for lineno, line in enumerate(fh, start=2):
            cells = line.rstrip("\n").split("\t")
            if len(cells) != len(names):
                raise ValueError(
                    f"{path}:{lineno}: {len(cells)} cells for "
                    f"{len(names)} columns"
                )
            rows.append([float(c) for c in cells])
    data = np.array(rows, dtype=float) if rows else np.empty((0, len(names)))
    return names, data


def write_manifest(path, payload: dict) -> None:
    """Stable JSON dump: sorted keys, no timestamps, trailing newline."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
