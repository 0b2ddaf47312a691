"""JSON team documents.

A document looks like::

    {
      "mode": "set",                              # or "multiteam"
      "variables": [{"name": "X", "range": [1, 2, 3]}, ...],
      "parents": {"Y": ["X"]},                    # one entry per endogenous variable
      "functions": {"Y": [{"args": [1], "value": 2}, ...]},
      "rows": [{"X": 1, "Y": 2}, ...],
      "keys": [0, 1, ...]                         # optional, multiteam only
    }

Function arguments follow the alphabetical order of the parent names.
Formal terms are written ``{"term": "f_Z", "args": [1, 1, 2]}``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import CausalGraph, CausalTeam, FormalTerm, ValidationError, validate


def decode_value(v: Any):
    if isinstance(v, dict):
        if set(v) != {"term", "args"} or not str(v["term"]).startswith("f_"):
            raise ValidationError(f"bad formal term {v!r}")
        return FormalTerm(v["term"][2:], tuple(decode_value(a) for a in v["args"]))
    return v


def encode_value(v: Any):
    if isinstance(v, FormalTerm):
        return {"term": f"f_{v.variable}", "args": [encode_value(a) for a in v.args]}
    return v


def team_from_dict(doc: dict) -> CausalTeam:
    try:
        variables = doc["variables"]
        rows = doc.get("rows", [])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"team document lacks {exc}") from None
    ranges = {v["name"]: v["range"] for v in variables}
    parents = doc.get("parents", {})
    edges = [(p, child) for child, ps in parents.items() for p in ps]
    graph = CausalGraph.build(ranges, edges)
    functions: dict[str, dict] = {v: {} for v in parents}
    for v, entries in doc.get("functions", {}).items():
        table = functions.setdefault(v, {})
        for e in entries:
            table[tuple(decode_value(a) for a in e["args"])] = decode_value(e["value"])
    mode = doc.get("mode", "set")
    if mode not in ("set", "multiteam"):
        raise ValidationError(f"mode must be 'set' or 'multiteam', got {mode!r}")
    records = [{k: decode_value(v) for k, v in r.items()} for r in rows]
    return validate(
        records, graph, ranges, functions,
        multiteam=mode == "multiteam", keys=doc.get("keys"),
    )


def team_to_dict(team: CausalTeam) -> dict:
    doc: dict[str, Any] = {
        "mode": "multiteam" if team.multiteam else "set",
        "variables": [{"name": v, "range": list(team.ranges[v])} for v in team.variables],
        "parents": {v: list(team.parents(v)) for v in sorted(team.functions)},
        "functions": {
            v: [
                {"args": [encode_value(a) for a in args], "value": encode_value(val)}
                for args, val in table.items()
            ]
            for v, table in sorted(team.functions.items())
        },
        "rows": [{k: encode_value(v) for k, v in rec.items()} for rec in team.records()],
    }
    if team.multiteam:
        doc["keys"] = list(team.keys)
    return doc


def load_team(path: str | Path) -> CausalTeam:
    with open(path, encoding="utf-8") as fh:
        return team_from_dict(json.load(fh))


def dump_team(team: CausalTeam, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(team_to_dict(team), fh, indent=2)
        fh.write("\n")
