"""Working precision and JSON helpers.

Magnitude data of a polynomial with ``max|f| / min|f| ~ 1e4`` on the circle
loses about eight digits when ``|f|^2`` is interpolated, so all values are
carried in extended precision (80-bit ``long double`` on x86-64; on
platforms where ``long double`` is binary64 this silently degrades to
double precision).
"""

from __future__ import annotations

import json

import numpy as np

REAL = np.longdouble
COMPLEX = np.clongdouble
PI = np.arctan2(REAL(0), REAL(-1))


def roots_of_unity(n: int) -> np.ndarray:
    """``exp(2 pi i q / n)`` for q = 0..n-1, in working precision."""
    theta = 2 * PI * np.arange(n, dtype=REAL) / n
    return (np.cos(theta) + 1j * np.sin(theta)).astype(COMPLEX)


def _fmt(x) -> str:
    if not np.isfinite(x):
        raise ValueError("cannot serialize a non-finite value to JSON")
    if isinstance(x, np.longdouble) and np.finfo(REAL).nmant > 52:
        return np.format_float_scientific(x, unique=True, trim="-")
    return repr(float(x))


def _encode(obj, indent, level):
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return json.dumps(bool(obj) if isinstance(obj, np.bool_) else obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, np.ndarray):
        obj = list(obj)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + ",".join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        # numeric leaf arrays stay on one line
        flat = all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in obj)
        if flat:
            return "[" + ", ".join(_encode(v, None, 0) for v in obj) + "]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[" + ",".join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = 1) -> str:
    """JSON text with every real written to full working precision."""
    return _encode(obj, indent, 0)


def loads(text: str):
    return json.loads(text, parse_float=REAL)


def dump(obj, path):
    with open(path, "w") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def load(path):
    with open(path) as fh:
        return loads(fh.read())
