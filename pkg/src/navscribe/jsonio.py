"""Canonical JSON emission for byte-deterministic output files.

Stdlib json cannot pin float formatting, so this tiny emitter renders floats
with a fixed format (6 decimal places by default), keeps dict insertion
order, indents like ``json.dumps(indent=2)``, uses LF line endings and ends
the document with a single newline. Parsing stays with stdlib ``json``.
"""
from __future__ import annotations

import json
import math
from typing import Any


def dumps(value: Any, *, float_fmt: str = ".6f") -> str:
    out: list[str] = []
    _emit(value, 0, out, float_fmt)
    out.append("\n")
    return "".join(out)


def _emit(value: Any, depth: int, out: list[str], float_fmt: str) -> None:
    if isinstance(value, bool):
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number not serializable: {value}")
        out.append(format(value, float_fmt))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, dict):
        _emit_dict(value, depth, out, float_fmt)
    elif isinstance(value, (list, tuple)):
        _emit_list(value, depth, out, float_fmt)
    else:
        raise TypeError(f"unsupported type for canonical JSON: {type(value).__name__}")


def _emit_dict(value: dict, depth: int, out: list[str], float_fmt: str) -> None:
    if not value:
        out.append("{}")
        return
    pad, inner = "  " * depth, "  " * (depth + 1)
    out.append("{\n")
    for i, (key, item) in enumerate(value.items()):
        if not isinstance(key, str):
            raise TypeError(f"non-string key: {key!r}")
        out.append(f"{inner}{json.dumps(key, ensure_ascii=False)}: ")
        _emit(item, depth + 1, out, float_fmt)
        out.append(",\n" if i < len(value) - 1 else "\n")
    out.append(pad + "}")


def _emit_list(value: list | tuple, depth: int, out: list[str], float_fmt: str) -> None:
    if not value:
        out.append("[]")
        return
    pad, inner = "  " * depth, "  " * (depth + 1)
    out.append("[\n")
    for i, item in enumerate(value):
        out.append(inner)
        _emit(item, depth + 1, out, float_fmt)
        out.append(",\n" if i < len(value) - 1 else "\n")
    out.append(pad + "]")
