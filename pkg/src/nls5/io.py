"""CSV and JSON exchange formats.

Every float is written with 17 significant digits so that doubles survive a
round trip, and JSON keys are sorted so identical runs give identical bytes.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import GridError
from .field import FieldFrame, Grid1D

FRAME_HEADER = ("x", "t", "re", "im", "abs")


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def _clean(obj):
    """Recursively turn numpy scalars/arrays and non-finite floats into JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def dumps(doc) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip float repr."""
    return json.dumps(_clean(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path, doc) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(doc))
    return path


def write_frame_csv(frame: FieldFrame, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    t = fmt(frame.t)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FRAME_HEADER)
        for x, v in zip(frame.x, frame.values):
            w.writerow((fmt(x), t, fmt(v.real), fmt(v.imag), fmt(abs(v))))
    return path


def read_frame_csv(path) -> FieldFrame:
    """Load a frame dump; the grid is inferred from the uniform x column."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(h.strip() for h in rows[0]) != FRAME_HEADER:
        raise GridError(f"{path}: expected header {','.join(FRAME_HEADER)}")
    data = np.array([[float(c) for c in r[:4]] for r in rows[1:] if r], dtype=float)
    if data.ndim != 2 or len(data) < 2:
        raise GridError(f"{path}: too few rows")
    x, t = data[:, 0], data[:, 1]
    if np.ptp(t) != 0:
        raise GridError(f"{path}: rows carry different times")
    n = len(x)
    dx = (x[-1] - x[0]) / (n - 1)
    if not np.allclose(np.diff(x), dx, rtol=1e-9, atol=1e-12 * max(1.0, abs(dx))):
        raise GridError(f"{path}: x column is not uniform")
    grid = Grid1D(float(x[0]), float(x[0] + n * dx), n)
    return FieldFrame(grid, float(t[0]), data[:, 2] + 1j * data[:, 3])


def export_trajectory(traj, out_dir, prefix: str = "frame", errors=None) -> Path:
    """One CSV per frame plus index.json with t, file, mass, momentum (and error)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    width = max(4, len(str(len(traj.frames) - 1)))
    for i, (frame, diag) in enumerate(zip(traj.frames, traj.diagnostics)):
        name = f"{prefix}_{i:0{width}d}.csv"
        write_frame_csv(frame, out / name)
        entry = {"t": frame.t, "file": name, "mass": diag["mass"], "momentum": diag["momentum"]}
        if errors is not None:
            entry["error"] = errors[i]
        entries.append(entry)
    return write_json(out / "index.json", {"frames": entries})
