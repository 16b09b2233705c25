"""Canonical JSON emission: fixed float width, stable layout."""
from __future__ import annotations

import json
import math

import pytest

from navscribe import jsonio


def test_floats_take_six_decimals():
    assert jsonio.dumps(1.5) == "1.500000\n"
    assert jsonio.dumps(-0.0000004) == "-0.000000\n"


def test_ints_and_bools_keep_their_types():
    out = jsonio.dumps({"n": 3, "ok": True, "off": False, "none": None})
    assert '"n": 3' in out
    assert '"ok": true' in out
    assert '"off": false' in out
    assert '"none": null' in out


def test_layout_matches_stdlib_for_float_free_values():
    value = {"a": [1, 2, {"b": "x"}], "c": [], "d": {}}
    assert jsonio.dumps(value) == json.dumps(value, indent=2, ensure_ascii=False) + "\n"


def test_key_order_is_insertion_order():
    out = jsonio.dumps({"z": 1, "a": 2})
    assert out.index('"z"') < out.index('"a"')


def test_custom_float_format():
    assert jsonio.dumps(0.0000012345, float_fmt=".3e") == "1.234e-06\n"


def test_non_finite_rejected():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(ValueError):
            jsonio.dumps({"x": bad})


def test_write_read_write_is_byte_stable():
    value = {"name": "loop", "dist": [1.0 / 3.0, 2.5], "meta": {"n": 7, "f": 0.1}}
    first = jsonio.dumps(value)
    second = jsonio.dumps(json.loads(first))
    assert first == second


def test_string_escaping():
    out = jsonio.dumps({"s": 'a "quote" and\nnewline'})
    assert json.loads(out)["s"] == 'a "quote" and\nnewline'


def test_document_ends_with_single_newline():
    out = jsonio.dumps([1, 2])
    assert out.endswith("\n") and not out.endswith("\n\n")
