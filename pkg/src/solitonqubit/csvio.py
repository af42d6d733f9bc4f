"""Deterministic CSV emission.

Every file has exactly one header row.  Floats are written with 12
significant digits via a fixed format so identical inputs give
byte-identical output; integers pass through unchanged.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence


def fmt(value: float | int) -> str:
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return f"{value:.11e}"


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[float | int]]) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
