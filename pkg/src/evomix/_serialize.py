"""Canonical JSON emission: sorted keys, 17-significant-digit floats.

Floats round-trip binary64 exactly; non-finite values are emitted as the
strings "inf", "-inf", "nan" to keep the output strict JSON.  Identical
inputs produce byte-identical text.
"""

from __future__ import annotations

import json
import math

import numpy as np


def format_float(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    return f"{x:.17g}"


def dumps(obj, indent: int = 0, _level: int = 0) -> str:
    pad = " " * (indent * (_level + 1)) if indent else ""
    end_pad = " " * (indent * _level) if indent else ""
    sep = ",\n" if indent else ", "
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [dumps(v, indent, _level + 1) for v in obj]
        if indent:
            return "[\n" + sep.join(pad + it for it in items) + "\n" + end_pad + "]"
        return "[" + sep.join(items) + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{json.dumps(str(k))}: " + dumps(obj[k], indent, _level + 1)
            for k in sorted(obj, key=str)
        ]
        if indent:
            return "{\n" + sep.join(pad + it for it in items) + "\n" + end_pad + "}"
        return "{" + sep.join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
