"""JSON encodings for families, point sets and permutation sets.

Rationals travel as strings (``"3/4"`` or ``"5"``) so nothing is rounded.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import InputError
from .geometry import BoxFamily, PointSet, rational
from .perms import PermutationSet

SCHEMA_VERSION = 1


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    """Bundled JSON schema, e.g. ``load_schema("family")`` or ``load_schema("verify-n2")``."""
    return json.loads(resources.files("hellylab").joinpath("schemas", f"{name}.json").read_text())


def validate(data, name: str) -> None:
    try:
        jsonschema.validate(data, load_schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise InputError(f"{name} JSON invalid at {where}: {exc.message}") from exc


def fmt(x: Fraction) -> str:
    return str(Fraction(x))


def family_to_json(family: BoxFamily) -> dict:
    return {
        "d": family.dimension,
        "boxes": [
            {"min": [fmt(x) for x in b.mins], "max": [fmt(x) for x in b.maxs]}
            for b in family.boxes
        ],
    }


def family_from_json(data) -> BoxFamily:
    validate(data, "family")
    try:
        d = int(data["d"])
        bounds = [
            ([rational(x) for x in b["min"]], [rational(x) for x in b["max"]]) for b in data["boxes"]
        ]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed family JSON: missing or invalid {exc}") from exc
    family = BoxFamily.from_bounds(bounds)
    if family.dimension != d:
        raise InputError(f"family JSON declares d={d} but boxes have dimension {family.dimension}")
    return family


def points_to_json(S: PointSet) -> dict:
    return {"points": [[fmt(x) for x in p] for p in S.points]}


def points_from_json(data, dimension: int) -> PointSet:
    validate(data, "points")
    try:
        pts = [[rational(x) for x in p] for p in data["points"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed point-set JSON: missing or invalid {exc}") from exc
    return PointSet(dimension, pts)


def perms_to_json(A: PermutationSet) -> dict:
    return {"n": A.n, "perms": [list(s) for s in A]}


def perms_from_json(data) -> PermutationSet:
    validate(data, "perms")
    try:
        return PermutationSet(data["perms"], n=int(data["n"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed permutation-set JSON: missing or invalid {exc}") from exc


def load_json(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
