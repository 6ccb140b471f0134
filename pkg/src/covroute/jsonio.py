"""Canonical JSON emission: fixed field order, floats at 6 decimals.

Two runs over identical inputs must produce byte-identical output, so
plain ``json.dumps`` (repr-based float formatting) is not enough. Field
order is the dict insertion order of the document builders; floats are
always rendered with exactly six decimal places; non-finite floats are
rejected (document builders encode unbounded values as null).
"""

from __future__ import annotations

import json
from math import isfinite
from typing import Any, Mapping, Sequence


def _write(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not isfinite(obj):
            raise ValueError("non-finite float in canonical JSON; encode as null instead")
        if obj == 0.0:  # normalize -0.0
            obj = 0.0
        out.append(f"{obj:.6f}")
    elif isinstance(obj, Mapping):
        out.append("{")
        first = True
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError(f"canonical JSON keys must be strings, got {k!r}")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(k, ensure_ascii=False))
            out.append(":")
            _write(v, out)
        out.append("}")
    elif isinstance(obj, Sequence):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _write(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot canonically serialize {type(obj).__name__}")


def canonical_dumps(obj: Any) -> str:
    out: list[str] = []
    _write(obj, out)
    return "".join(out)
