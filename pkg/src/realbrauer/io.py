"""Reading and writing groupoid, cocycle and report files.

A groupoid file is JSON, either explicit::

    {"objects": 2,
     "arrows": [{"id": "e0", "src": 0, "tgt": 0}, ...],
     "compose": [["g", "h", "gh"], ...],
     "inverse": ["e0", ...],
     "involution": {"objects": [1, 0], "arrows": ["e1", ...]}}

or a recipe ``{"kind": ..., ...}`` with kind one of point, group, pair,
real_space, orientifold, swap_double.  Recipes are expanded to the explicit
form by ``to_explicit``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Union

from .groupoid import (GroupoidError, RealGroupoid, cyclic_group, group_groupoid,
                       make_orientifold, make_swap_double, pair_groupoid, point,
                       real_space, validate_tables)


class InputError(ValueError):
    pass


def fingerprint(data: Union[bytes, str]) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def read_json(path: Union[str, Path]):
    """Parse a JSON file, returning (data, sha256 of the raw bytes)."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(raw), fingerprint(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _require(d: Dict[str, Any], key: str):
    if key not in d:
        raise InputError(f"missing field {key!r}")
    return d[key]


def groupoid_from_recipe(d: Dict[str, Any]) -> RealGroupoid:
    kind = d["kind"]
    name = d.get("name", "")
    if kind == "point":
        return point()
    if kind == "group":
        if "table" in d:
            return group_groupoid(d["table"], d.get("involution"), name=name or "group")
        return cyclic_group(_require(d, "orders"), d.get("involution", "trivial"), name=name)
    if kind == "pair":
        return pair_groupoid(int(_require(d, "n")), d.get("involution"), name=name)
    if kind == "real_space":
        return real_space(_require(d, "involution"), name=name)
    if kind == "orientifold":
        group = groupoid_from_dict(_require(d, "group"))
        return make_orientifold(_require(d, "space_involution"), group,
                                _require(d, "action"),
                                allow_non_free=bool(d.get("allow_non_free", False)),
                                name=name)
    if kind == "swap_double":
        return make_swap_double(groupoid_from_dict(_require(d, "of")), name=name)
    raise InputError(f"unknown groupoid recipe kind {kind!r}")


def groupoid_from_explicit(d: Dict[str, Any]) -> RealGroupoid:
    objects = _require(d, "objects")
    if isinstance(objects, int):
        n, obj_labels = objects, tuple(str(i) for i in range(objects))
    else:
        n, obj_labels = len(objects), tuple(str(o) for o in objects)
    obj_index = {lab: i for i, lab in enumerate(obj_labels)}

    def obj(v):
        key = str(v)
        if key in obj_index:
            return obj_index[key]
        raise InputError(f"unknown object {v!r}")

    arrows = _require(d, "arrows")
    ids = [str(a.get("id", i)) for i, a in enumerate(arrows)]
    if len(set(ids)) != len(ids):
        raise InputError("arrow ids are not unique")
    idx = {a: i for i, a in enumerate(ids)}

    def arr(v):
        key = str(v)
        if key in idx:
            return idx[key]
        raise InputError(f"unknown arrow {v!r}")

    m = len(arrows)
    src = [obj(_require(a, "src")) for a in arrows]
    tgt = [obj(_require(a, "tgt")) for a in arrows]
    table = [[-1] * m for _ in range(m)]
    for entry in _require(d, "compose"):
        if len(entry) != 3:
            raise InputError("compose entries must be [g, h, gh]")
        g, h, gh = (arr(x) for x in entry)
        if table[g][h] not in (-1, gh):
            raise InputError(f"conflicting compositions for ({entry[0]}, {entry[1]})")
        table[g][h] = gh
    inverse = [arr(x) for x in _require(d, "inverse")]
    unit = []
    for x in range(n):
        loops = [g for g in range(m) if src[g] == x and tgt[g] == x and table[g][g] == g]
        if len(loops) != 1:
            raise GroupoidError(f"object {obj_labels[x]} has {len(loops)} idempotent loops, expected one unit")
        unit.append(loops[0])
    inv = d.get("involution", {})
    tau_o = [obj(x) for x in inv.get("objects", range(n))]
    tau_a = [arr(x) for x in inv.get("arrows", ids)]
    return validate_tables(n, src, tgt, table, inverse, unit, tau_o, tau_a,
                           name=d.get("name", "groupoid"), object_labels=obj_labels,
                           arrow_labels=tuple(ids))


def groupoid_from_dict(d: Dict[str, Any]) -> RealGroupoid:
    if not isinstance(d, dict):
        raise InputError("groupoid description must be a JSON object")
    try:
        if "kind" in d:
            return groupoid_from_recipe(d)
        return groupoid_from_explicit(d)
    except (TypeError, ValueError, IndexError, KeyError) as exc:
        if isinstance(exc, (GroupoidError, InputError)):
            raise
        raise InputError(f"malformed groupoid description: {exc}") from None


def load_groupoid(path: Union[str, Path]):
    """Read and validate a groupoid file; returns (groupoid, fingerprint)."""
    data, digest = read_json(path)
    return groupoid_from_dict(data), digest


def to_explicit(G: RealGroupoid) -> Dict[str, Any]:
    """Canonical explicit description; arrows are referred to by label."""
    labels = [str(x) for x in (G.arrow_labels or range(G.n_arrows))]
    if len(set(labels)) != len(labels):
        labels = [str(i) for i in range(G.n_arrows)]
    compose = [[labels[g], labels[h], labels[gh]]
               for g in range(G.n_arrows) for h in range(G.n_arrows)
               if (gh := G.compose_table[g][h]) >= 0]
    return {
        "name": G.name,
        "objects": G.n_objects,
        "arrows": [{"id": labels[g], "src": G.src[g], "tgt": G.tgt[g]}
                   for g in range(G.n_arrows)],
        "compose": compose,
        "inverse": [labels[i] for i in G.inverse],
        "involution": {"objects": list(G.involution_obj),
                       "arrows": [labels[t] for t in G.involution_arr]},
    }


# cocycles ----------------------------------------------------------------

def parse_fraction(v) -> Fraction:
    try:
        return Fraction(v) % 1
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"bad circle value {v!r}; use a fraction such as \"1/2\"") from None


def read_extension_pairs(data, n_arrows: int, n_simplices: int) -> List[tuple]:
    """Cocycle pairs (delta, omega) from {"classes": [{"delta", "omega"}, ...]}.

    delta lists one 0/1 value per arrow; omega lists one Q/Z value per
    2-simplex, or may be omitted (zero).  Alternatively each may be a list
    of [index, value] pairs naming only the nonzero entries.
    """
    if not isinstance(data, dict) or "classes" not in data:
        raise InputError("cocycle file must hold {\"classes\": [...]}")
    out = []
    for c in data["classes"]:
        delta = _dense(c.get("delta", []), n_arrows, int)
        omega = _dense(c.get("omega", []), n_simplices, parse_fraction)
        out.append((delta, omega))
    return out


def _dense(values, length, conv):
    if values and all(isinstance(v, list) and len(v) == 2 for v in values):
        out = [conv(0)] * length
        for i, v in values:
            if not 0 <= int(i) < length:
                raise InputError(f"index {i} out of range")
            out[int(i)] = conv(v)
        return out
    if not values:
        return [conv(0)] * length
    if len(values) != length:
        raise InputError(f"expected {length} values, got {len(values)}")
    return [conv(v) for v in values]


def fraction_text(x: Fraction) -> str:
    return str(Fraction(x) % 1)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
