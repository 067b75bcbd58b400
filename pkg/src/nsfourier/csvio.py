"""CSV artifacts: UTF-8, LF line endings, 17 significant digits, ``# cmd:`` header."""

from __future__ import annotations

import csv
import io
import math
import os
import sys
from typing import Iterable, Sequence

import numpy as np

REPORT_HEADER = ("function", "n", "metric", "value", "bound", "pass")
BOUNDS_HEADER = ("function", "n", "quantity", "measured", "bound", "pass")
SPECTRUM_HEADER = ("t", "re", "im")
SIGNAL_HEADER = ("x", "re", "im")
CHARTABLE_HEADER = ("label", "element", "re", "im")
MANIFEST_HEADER = ("name", "B", "D1", "C2", "M", "has_closed_form")


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        # normalise negative zero so identical runs cannot differ on it
        return format(v + 0.0, ".17g")
    return str(v)


def render(cmd: str, header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(f"# cmd: {cmd}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def check_writable(path: str) -> None:
    if path == "-":
        return
    if os.path.isdir(path):
        raise OSError(f"{path} is a directory")
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise OSError(f"cannot write to {path}")
    if os.path.exists(path) and not os.access(path, os.W_OK):
        raise OSError(f"cannot write to {path}")


def write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
