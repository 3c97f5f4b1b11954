"""JSON graph files and DOT export.

Graph file layout::

    {"vertices": ["v1", "v2", ...],
     "E":      [["v1", "v3"], ...],
     "E_star": [["v1", "v2"], ...]}

Loader errors carry the line of the offending entry.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import GraphError, RGraph, SimpleGraph

__all__ = ["LoadError", "load_graph", "loads_graph", "dumps_graph", "to_dot"]


class LoadError(GraphError):
    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


def _array_offsets(text: str, key: str) -> list[int]:
    """Character offsets of the elements of the top-level array ``key``."""
    dec = json.JSONDecoder()
    idx = 0
    needle = json.dumps(key)
    while True:
        idx = text.find(needle, idx)
        if idx < 0:
            return []
        j = idx + len(needle)
        while j < len(text) and text[j].isspace():
            j += 1
        if j < len(text) and text[j] == ":":
            break
        idx = j
    j = text.index("[", j)
    offsets = []
    j += 1
    while True:
        while text[j].isspace() or text[j] == ",":
            j += 1
        if text[j] == "]":
            return offsets
        offsets.append(j)
        _, j = dec.raw_decode(text, j)


def _line(text: str, offset: int | None) -> int | None:
    if offset is None:
        return None
    return text.count("\n", 0, offset) + 1


def loads_graph(text: str, source: str = "<string>", *, check: bool = True) -> RGraph:
    """Parse a graph document.  ``check=False`` skips condition (R)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(exc.msg, exc.lineno, source) from None
    if not isinstance(doc, dict):
        raise LoadError("top level must be an object", 1, source)
    for key in ("vertices", "E", "E_star"):
        if key not in doc:
            raise LoadError(f"missing key {key!r}", None, source)
        if not isinstance(doc[key], list):
            raise LoadError(f"{key!r} must be a list", None, source)

    names = doc["vertices"]
    ids: dict[str, int] = {}
    for k, name in enumerate(names):
        if not isinstance(name, str):
            raise LoadError(f"vertex name must be a string, got {name!r}",
                            _line(text, _nth(text, "vertices", k)), source)
        if name in ids:
            raise LoadError(f"duplicate vertex {name!r}", _line(text, _nth(text, "vertices", k)), source)
        ids[name] = len(ids)

    edge_sets = {}
    for key in ("E", "E_star"):
        seen = set()
        edges = []
        for k, item in enumerate(doc[key]):
            line = _line(text, _nth(text, key, k))
            if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
                raise LoadError(f"{key} entry must be a pair of vertex names, got {item!r}", line, source)
            a, b = item
            for x in (a, b):
                if x not in ids:
                    raise LoadError(f"{key} entry {item!r} names unknown vertex {x!r}", line, source)
            if a == b:
                raise LoadError(f"{key} entry {item!r} is a loop", line, source)
            e = frozenset((a, b))
            if e in seen:
                raise LoadError(f"{key} entry {item!r} is a duplicate edge", line, source)
            seen.add(e)
            edges.append((ids[a], ids[b]))
        edge_sets[key] = edges

    verts = frozenset(ids.values())
    return RGraph(SimpleGraph(verts, edge_sets["E"]), SimpleGraph(verts, edge_sets["E_star"]),
                  {i: n for n, i in ids.items()}, check=check)


def _nth(text: str, key: str, k: int) -> int | None:
    offs = _array_offsets(text, key)
    return offs[k] if k < len(offs) else None


def load_graph(path, *, check: bool = True) -> RGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise LoadError(exc.strerror or str(exc), None, str(path)) from None
    return loads_graph(text, str(path), check=check)


def graph_document(g: RGraph) -> dict:
    def pairs(edges):
        return [[g.name(a), g.name(b)] for a, b in sorted(edges)]

    return {
        "vertices": [g.name(v) for v in g.sorted_vertices()],
        "E": pairs(g.base.edges),
        "E_star": pairs(g.star.edges),
    }


def dumps_graph(g: RGraph) -> str:
    return json.dumps(graph_document(g), indent=2)


def to_dot(g: RGraph, name: str = "R", highlight=None) -> str:
    """Undirected DOT source: base edges solid, star edges dashed.

    ``highlight`` is an optional R-cycle whose segments are drawn bold.
    """
    bold = set()
    if highlight is not None:
        for seg in highlight.segments:
            bold.update(frozenset(p) for p in zip(seg, seg[1:]))
        bold.update(frozenset(p) for p in highlight.links())
    lines = [f"graph {json.dumps(name)} {{"]
    for v in g.sorted_vertices():
        lines.append(f"  {json.dumps(g.name(v))};")
    for style, edges in (("solid", g.base.edges), ("dashed", g.star.edges)):
        for a, b in sorted(edges):
            attrs = f"style={style}"
            if frozenset((a, b)) in bold:
                attrs += ", penwidth=2.5, color=red"
            lines.append(f"  {json.dumps(g.name(a))} -- {json.dumps(g.name(b))} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
