"""JSON forms of every data type, as (parse, dump) pairs.

``dump`` always emits the canonical form, so ``parse(dump(x)) == x`` and
``dump(parse(j))`` normalizes ``j``.
"""

from __future__ import annotations

import json
from typing import Any

from . import combinators, extnat
from .core import FiniteStructure, ScottSentence, Signature
from .grpact import ColoringFamily, Coloring, GraphInstance, GroupElem, Partial, Total, Xor
from .orbit import FiniteAction, OrbitStructure
from .ref import BIN, INF, RefData, RefPresentation


class InputError(ValueError):
    """Malformed JSON input (CLI exit status 2)."""


def _need(obj, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"field {key!r} has the wrong type")
    return val


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# core


def dump_structure(m: FiniteStructure) -> dict:
    return {
        "sig": [{"name": n, "arity": a} for n, a in m.sig.symbols],
        "size": m.size,
        "interp": {n: sorted(list(t) for t in rel) for n, rel in zip(m.sig.names, m.relations)},
    }


def parse_structure(obj) -> FiniteStructure:
    sig = Signature(tuple((_need(s, "name", str), _need(s, "arity", int)) for s in _need(obj, "sig", list)))
    interp = _need(obj, "interp", dict)
    return FiniteStructure.build(sig, _need(obj, "size", int), {k: [tuple(t) for t in v] for k, v in interp.items()})


def dump_sentence(s: ScottSentence) -> str:
    return s.hex()


def parse_sentence(obj) -> ScottSentence:
    if not isinstance(obj, str):
        raise InputError("a Scott sentence is a hex string")
    return ScottSentence.fromhex(obj)


# ---------------------------------------------------------------------------
# ref


def dump_presentation(p: RefPresentation) -> dict:
    return {
        "variant": BIN if p.variant == BIN else {INF: p.width},
        "depth": p.depth,
        "colors": {a: extnat.to_json(c) for a, c in p.as_mapping().items()},
    }


def _variant(obj) -> tuple[str, int]:
    v = _need(obj, "variant")
    if v == BIN:
        return BIN, 2
    if isinstance(v, dict) and set(v) == {INF} and isinstance(v[INF], int):
        return INF, v[INF]
    raise InputError(f"bad variant {v!r}")


def parse_presentation(obj) -> RefPresentation:
    variant, width = _variant(obj)
    colors = {a: extnat.from_json(c) for a, c in _need(obj, "colors", dict).items()}
    return RefPresentation.from_mapping(variant, width, _need(obj, "depth", int), colors)


def _dump_datum(datum):
    if isinstance(datum, tuple):
        return [[_dump_datum(c), m] for c, m in datum]
    return extnat.to_json(datum)


def _parse_datum(obj):
    if isinstance(obj, list):
        return tuple((_parse_datum(c), m) for c, m in obj)
    return extnat.from_json(obj)


def dump_data(d: RefData) -> dict:
    return {"variant": BIN if d.variant == BIN else {INF: d.width}, "depth": d.depth, "root": _dump_datum(d.root)}


def parse_data(obj) -> RefData:
    variant, width = _variant(obj)
    return RefData(variant, width, _need(obj, "depth", int), _parse_datum(_need(obj, "root")))


def dump_tree(tree) -> dict:
    return {"nodes": sorted(tree, key=lambda s: (len(s), s))}


def parse_tree(obj) -> frozenset[str]:
    nodes = _need(obj, "nodes", list)
    if not all(isinstance(s, str) for s in nodes):
        raise InputError("tree nodes are strings")
    return frozenset(nodes)


# ---------------------------------------------------------------------------
# grpact


def dump_coloring(c: Coloring) -> dict:
    return {"values": c.as_dict()}


def parse_coloring(obj) -> Coloring:
    return Coloring.from_dict(_need(obj, "values", dict))


def dump_family(f: ColoringFamily) -> list:
    counts = f.counts()
    return [{"values": c.as_dict(), "mult": counts[c]} for c in sorted(counts, key=lambda c: c.values)]


def parse_family(obj) -> ColoringFamily:
    if not isinstance(obj, list):
        raise InputError("a family is an array of colorings")
    items = []
    for entry in obj:
        m = entry.get("mult", 1) if isinstance(entry, dict) else None
        if not isinstance(m, int) or m < 1:
            raise InputError("multiplicities are positive integers")
        items.extend([parse_coloring(entry)] * m)
    return ColoringFamily.of(items)


def dump_graph(g: GraphInstance) -> dict:
    return {"v": g.v, "edges": sorted(list(e) for e in g.edges)}


def parse_graph(obj) -> GraphInstance:
    return GraphInstance.of(_need(obj, "v", int), [tuple(e) for e in _need(obj, "edges", list)])


def dump_element(g: GroupElem) -> dict:
    if isinstance(g, Xor):
        return {"xor": g.bits}
    if isinstance(g, Total):
        return {"total": {"depth": g.depth, "swaps": sorted(g.swaps, key=lambda s: (len(s), s))}}
    return {"partial": dict(g.mapping)}


def parse_element(obj) -> GroupElem:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError("a group element is {xor|total|partial: ...}")
    (tag, body), = obj.items()
    if tag == "xor" and isinstance(body, str):
        return Xor(body)
    if tag == "total":
        return Total(_need(body, "depth", int), frozenset(_need(body, "swaps", list)))
    if tag == "partial" and isinstance(body, dict):
        return Partial(tuple(body.items()))
    raise InputError(f"bad group element {obj!r}")


# ---------------------------------------------------------------------------
# orbit


def dump_action(a: FiniteAction) -> dict:
    return {"n": a.n, "perms": [list(p) for p in a.perms]}


def parse_action(obj) -> FiniteAction:
    return FiniteAction(_need(obj, "n", int), tuple(tuple(p) for p in _need(obj, "perms", list)))


def dump_subset(s) -> list:
    return sorted(set(s))


def parse_subset(obj) -> frozenset[int]:
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise InputError("a subset is an array of points")
    if len(set(obj)) != len(obj):
        raise InputError("repeated point in subset")
    return frozenset(obj)


def dump_orbit_structure(m: OrbitStructure) -> dict:
    return {
        "base": list(m.base),
        "orbits": [[list(t), list(r)] for t, r in sorted(m.tuple_orbits.items(), key=lambda kv: (len(kv[0]), kv[0]))],
    }


def parse_orbit_structure(obj) -> OrbitStructure:
    base = tuple(_need(obj, "base", list))
    return OrbitStructure(base, {tuple(t): tuple(r) for t, r in _need(obj, "orbits", list)})


# ---------------------------------------------------------------------------
# combinators


dump_invariant = combinators.to_json


def parse_invariant(obj) -> combinators.NestedInvariant:
    try:
        return combinators.from_json(obj)
    except (TypeError, KeyError) as e:
        raise InputError(f"bad invariant: {e}") from e

