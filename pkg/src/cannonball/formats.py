"""Line-oriented JSON files for instances and colourings.

Both formats start with a header object on the first line and continue
with one object per vertex, keyed ``"layer,u,v"``::

    {"format": "cannonball-instance", "version": 1, "stacking": "ABC", "boxes": [[0, 4, 0, 4], ...]}
    {"key": "0,1,2", "d": 5}

    {"format": "cannonball-coloring", "version": 1, "summary": {...}}
    {"key": "0,1,2", "colors": [[0, 1], [0, 2]]}
"""

from __future__ import annotations

import json

from .errors import InputError
from .graph import CannonballGraph, build_graph
from .lattice import GridRegion, GridVertex, StackingSequence
from .multicolor import PaletteColor

INSTANCE_FORMAT = "cannonball-instance"
COLORING_FORMAT = "cannonball-coloring"
VERSION = 1


def vertex_key(v) -> str:
    return f"{v[0]},{v[1]},{v[2]}"


def parse_key(key: str) -> GridVertex:
    try:
        z, u, v = (int(x) for x in key.split(","))
    except (AttributeError, ValueError):
        raise InputError(f"bad vertex key {key!r}; expected 'layer,u,v'") from None
    return GridVertex(z, u, v)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _lines(text: str, fmt: str):
    rows = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise InputError(f"line {n}: {e}") from None
    if not rows or not isinstance(rows[0], dict) or rows[0].get("format") != fmt:
        raise InputError(f"not a {fmt} file")
    if rows[0].get("version") != VERSION:
        raise InputError(f"unsupported {fmt} version {rows[0].get('version')!r}")
    return rows[0], rows[1:]


def dumps_instance(g: CannonballGraph) -> str:
    header = {
        "format": INSTANCE_FORMAT,
        "version": VERSION,
        "stacking": str(g.stacking),
        "boxes": [list(b) for b in g.region.boxes],
    }
    out = [_dump(header)]
    out += [_dump({"key": vertex_key(v), "d": g.demand[v]}) for v in sorted(g.demand)]
    return "\n".join(out) + "\n"


def loads_instance(text: str) -> CannonballGraph:
    header, rows = _lines(text, INSTANCE_FORMAT)
    try:
        stacking = StackingSequence(header["stacking"])
        boxes = tuple(tuple(int(x) for x in b) for b in header["boxes"])
        if any(len(b) != 4 for b in boxes):
            raise InputError("each box needs four integers")
        region = GridRegion(stacking, boxes)
        demands = [(parse_key(r["key"]), r["d"]) for r in rows]
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed instance: missing or bad field {e}") from None
    return build_graph(region, demands)


def dumps_coloring(f, summary=None) -> str:
    header = {"format": COLORING_FORMAT, "version": VERSION, "summary": summary or {}}
    out = [_dump(header)]
    for v in sorted(f):
        colors = sorted(f[v])
        out.append(_dump({"key": vertex_key(v), "colors": [[c[0], c[1]] for c in colors]}))
    return "\n".join(out) + "\n"


def loads_coloring(text: str):
    """Returns ``(assignment, summary)``."""
    header, rows = _lines(text, COLORING_FORMAT)
    f = {}
    try:
        for r in rows:
            v = parse_key(r["key"])
            if v in f:
                raise InputError(f"duplicate vertex {v} in colouring")
            f[v] = frozenset(PaletteColor(int(p), int(i)) for p, i in r["colors"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed colouring: {e}") from None
    return f, header.get("summary", {})


def read_instance(path) -> CannonballGraph:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def write_instance(path, g):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(g))


def read_coloring(path):
    with open(path, encoding="utf-8") as fh:
        return loads_coloring(fh.read())


def write_coloring(path, f, summary=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_coloring(f, summary))
