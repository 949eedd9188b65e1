"""Byte-stable JSON and CSV writers.

JSON keys are sorted, floats use ``repr`` and non-finite values become the
strings ``"inf"``, ``"-inf"`` and ``"nan"``.  Nothing time-dependent goes into
a data file; run metadata lives in a separate sidecar.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import platform
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__


def jsonable(obj):
    """Recursively convert reports, numpy values and tuples to plain JSON types."""
    if hasattr(obj, "as_dict") and callable(obj.as_dict):
        return jsonable(obj.as_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, Fraction):
        return str(obj)
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(data) -> str:
    return json.dumps(jsonable(data), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path, data):
    Path(path).write_text(dumps(data), encoding="utf-8", newline="\n")


def write_csv(path, values, header=("n", "value"), start=1):
    """One row per entry: ``n`` counts from ``start``.  Rows may also be tuples."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for i, v in enumerate(values, start=start):
            row = v if isinstance(v, (list, tuple)) else (i, v)
            w.writerow([_cell(x) for x in row])


def _cell(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def run_info(command, argv=None) -> dict:
    """Sidecar metadata: versions and arguments, no clock readings."""
    return {
        "command": command,
        "argv": list(argv or []),
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }
