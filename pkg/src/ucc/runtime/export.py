"""Structured result export: one JSON document per run.

Every variable reports its kind and bounds; p-boxes include the full
quantile arrays so downstream tooling can re-plot or re-check them.
"""

from __future__ import annotations

import json

from ..interval import Interval
from ..logic import Logical
from ..pbox import PBox


def value_record(v):
    if isinstance(v, bool):
        return {"kind": "bool", "value": v}
    if isinstance(v, (int, float)):
        return {"kind": "scalar", "value": v}
    if isinstance(v, Interval):
        return {"kind": "interval", "lo": v.lo, "hi": v.hi}
    if isinstance(v, PBox):
        rec = {
            "kind": v.kind,
            "steps": v.steps,
            "support": [float(v.left[0]), float(v.right[-1])],
            "mean_bounds": [v.mean_bounds().lo, v.mean_bounds().hi],
            "left": [float(x) for x in v.left],
            "right": [float(x) for x in v.right],
        }
        if v.ensemble is not None:
            rec["ensemble"] = v.ensemble
        return rec
    if isinstance(v, Logical):
        rec = {"kind": "logical", "state": v.state}
        if v.prob is not None:
            rec["prob"] = [v.prob.lo, v.prob.hi]
        return rec
    if isinstance(v, list):
        return {"kind": "list", "items": [value_record(e) for e in v]}
    return {"kind": "opaque", "repr": repr(v)}


def export_env(env: dict, indent: int = 2) -> str:
    doc = {"vars": {name: value_record(v) for name, v in env.items() if not callable(v)}}
    return json.dumps(doc, indent=indent, allow_nan=True)
