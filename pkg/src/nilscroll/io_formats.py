"""Deterministic OBJ / CSV / JSON serialization for the CLI.

OBJ files carry v/f records only; CSV is RFC-4180 with a header row and
fixed 17-significant-digit numbers (the golden-file medium); JSON uses the
shortest round-trip float representation with sorted keys.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources


def fmt17(x) -> str:
    """Fixed 17-significant-digit decimal, the CSV golden-file format."""
    return format(float(x), ".17g")


def write_obj(path, vertices, ns: int, nt: int):
    """Wavefront OBJ: ns*nt vertices in row-major (s outer, t inner) order.

    Faces are quads over consecutive grid cells, 1-based indices.
    """
    if len(vertices) != ns * nt:
        raise ValueError(f"expected {ns * nt} vertices, got {len(vertices)}")
    lines = []
    for v in vertices:
        lines.append(f"v {fmt17(v[0])} {fmt17(v[1])} {fmt17(v[2])}")
    for i in range(ns - 1):
        for j in range(nt - 1):
            a = i * nt + j + 1
            b = a + 1
            c = a + nt + 1
            d = a + nt
            lines.append(f"f {a} {b} {c} {d}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_curve_csv(path, rows):
    """CSV of (s, t) singular-curve samples; t is blank for unbounded rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["s", "t"])
    for s, t in rows:
        w.writerow([fmt17(s), "" if t is None else fmt17(t)])
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


def write_json(path, payload):
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)
    with open(path, "w", newline="\n") as fh:
        fh.write(text + "\n")


def load_schema(name: str) -> dict:
    """Load one of the shipped report schemas by stem name."""
    ref = resources.files("nilscroll.schemas") / f"{name}.schema.json"
    return json.loads(ref.read_text())
