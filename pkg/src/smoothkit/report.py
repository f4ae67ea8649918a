"""Deterministic JSON and CSV emitters.

Floats are written with 17 significant digits so that every value
round-trips bit-for-bit; non-finite floats become ``null`` in JSON and
``nan``/``inf`` in CSV.  Dict keys keep insertion order.
"""

import enum
import json
import math

import numpy as np

SCHEMA = "smoothkit/1"


def fmt_float(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, enum.Enum):
        obj = obj.value
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return "null" if obj is None else ("true" if obj else "false")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent=2):
    return _encode(obj, indent, 0)


def with_schema(payload):
    return {"schema": SCHEMA, **payload}


def write_csv(stream, columns):
    """Write equal-length columns (a dict of name -> sequence) with a header row."""
    names = list(columns)
    rows = zip(*(columns[n] for n in names))
    stream.write(",".join(names) + "\n")
    for row in rows:
        stream.write(",".join(fmt_float(v) for v in row) + "\n")
