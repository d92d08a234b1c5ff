"""JSON encodings of clutters, posets, antichains and map tables."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from blockerlab.antichains import Antichain, make_antichain
from blockerlab.clutter import Clutter, GroundSet, Kind, make_clutter
from blockerlab.errors import BlockerLabError
from blockerlab.labels import sort_labels
from blockerlab.maps import MapTable, make_map_table
from blockerlab.poset import Poset, make_poset


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise BlockerLabError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BlockerLabError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _require(obj, key: str, what: str):
    if not isinstance(obj, dict):
        raise BlockerLabError(f"{what} must be a JSON object")
    if key not in obj:
        raise BlockerLabError(f"{what} is missing the {key!r} field")
    return obj[key]


def _label_list(value, what: str) -> list:
    if not isinstance(value, list):
        raise BlockerLabError(f"{what} must be a list")
    return value


def clutter_from_json(obj) -> Clutter:
    ground = GroundSet.of(_label_list(_require(obj, "ground", "clutter"), "clutter ground"))
    kind = obj.get("kind")
    raw_sets = obj.get("sets")
    if kind is None:
        return make_clutter(ground, [_label_list(s, "clutter set") for s in _label_list(raw_sets or [], "sets")])
    try:
        kind = Kind(kind)
    except ValueError:
        raise BlockerLabError(f"unknown clutter kind {kind!r}") from None
    if kind is not Kind.PROPER:
        if raw_sets:
            raise BlockerLabError(f"a {kind.value} clutter must not list sets")
        return Clutter(ground, kind)
    if raw_sets is None:
        raise BlockerLabError("a proper clutter needs a 'sets' field")
    c = make_clutter(ground, [_label_list(s, "clutter set") for s in _label_list(raw_sets, "sets")])
    if c.kind is not Kind.PROPER:
        raise BlockerLabError(f"sets describe a {c.kind.value} clutter, not a proper one")
    return c


def clutter_to_json(c: Clutter) -> dict:
    out: dict[str, Any] = {"ground": list(c.ground.elements), "kind": c.kind.value}
    if c.kind is Kind.PROPER:
        out["sets"] = [sort_labels(s) for s in c.sets]
    return out


def poset_from_json(obj, strict_bounded: bool = False, bounded: bool = True) -> Poset:
    elements = _label_list(_require(obj, "elements", "poset"), "poset elements")
    covers = _label_list(obj.get("covers", []), "poset covers")
    return make_poset(elements, covers, bounded=bounded, strict_bounded=strict_bounded)


def poset_to_json(p: Poset) -> dict:
    return {"elements": list(p.elements), "covers": [list(c) for c in p.covers]}


def antichain_from_json(obj, p: Poset) -> Antichain:
    return make_antichain(p, _label_list(_require(obj, "members", "antichain"), "antichain members"))


def antichain_to_json(a: Antichain) -> dict:
    return {"members": a.members}


def map_from_json(obj, p: Poset | None = None) -> MapTable:
    """A map table; ``obj`` may embed its own ``"poset"``, which must agree with ``p`` if both are given."""
    pairs = _label_list(_require(obj, "pairs", "map table"), "map pairs")
    if "poset" in obj:
        embedded = poset_from_json(obj["poset"], bounded=False)
        if p is not None and embedded != p:
            raise BlockerLabError("map table embeds a poset different from the one supplied")
        p = p or embedded
    if p is None:
        raise BlockerLabError("map table needs a poset: pass one or embed it under 'poset'")
    return make_map_table(p, pairs)


def map_to_json(m: MapTable) -> dict:
    return {"pairs": m.pairs()}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
