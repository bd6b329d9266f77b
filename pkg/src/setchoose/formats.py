"""Serialization: DOT export, a DIMACS-style edge-list format, and JSON lists.

Edge-list format: a single header ``p edge <n> <m>``, optional comment lines
``c ...`` (of which ``c label <index> <name>`` lines carry vertex labels), and
one ``<u> <v>`` line per edge with 1-based vertex indices.
"""

from __future__ import annotations

import json

from .model import ColorSet, Graph, ListAssignment, StructuralError

__all__ = [
    "to_dot",
    "to_edgelist",
    "from_edgelist",
    "lists_to_json",
    "lists_from_json",
]


def _quote(name: str) -> str:
    return '"%s"' % name.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: Graph, lists: ListAssignment | None = None) -> str:
    """Render as an undirected DOT graph; node names are the vertex labels.

    When ``lists`` is given, each node carries a ``lists`` attribute with its
    comma-separated colors.
    """
    if lists is not None and len(lists) != graph.n:
        raise StructuralError("list assignment does not match graph")
    out = ["graph setchoose {"]
    for v in range(graph.n):
        if lists is None:
            out.append(f"  {_quote(graph.labels[v])};")
        else:
            colors = ",".join(str(c) for c in lists[v])
            out.append(f'  {_quote(graph.labels[v])} [lists="{colors}"];')
    for u, v in graph.edge_list:
        out.append(f"  {_quote(graph.labels[u])} -- {_quote(graph.labels[v])};")
    out.append("}")
    return "\n".join(out) + "\n"


def to_edgelist(graph: Graph, include_labels: bool = True) -> str:
    out = [f"p edge {graph.n} {graph.edge_count}"]
    if include_labels:
        for v in range(graph.n):
            out.append(f"c label {v + 1} {graph.labels[v]}")
    for u, v in graph.edge_list:
        out.append(f"{u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def from_edgelist(text: str) -> Graph:
    n = None
    m = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("p "):
            if n is not None:
                raise StructuralError(f"line {lineno}: repeated header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "edge":
                raise StructuralError(f"line {lineno}: bad header {line!r}")
            n, m = int(parts[2]), int(parts[3])
            continue
        if line.startswith("c"):
            parts = line.split(maxsplit=3)
            if len(parts) == 4 and parts[1] == "label":
                labels[int(parts[2])] = parts[3]
            continue
        if n is None:
            raise StructuralError(f"line {lineno}: edge before header")
        parts = line.split()
        if len(parts) != 2:
            raise StructuralError(f"line {lineno}: bad edge line {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise StructuralError(f"line {lineno}: vertex index out of range")
        edges.append((u - 1, v - 1))
    if n is None:
        raise StructuralError("missing 'p edge n m' header")
    if m is not None and len(edges) != m:
        raise StructuralError(f"header announced {m} edges, found {len(edges)}")
    names = [labels.get(v + 1, str(v + 1)) for v in range(n)]
    return Graph.build(names, edges)


def lists_to_json(graph: Graph, lists: ListAssignment) -> str:
    """JSON object mapping each vertex label to its sorted color array."""
    return json.dumps(lists.to_dict(graph), indent=0, sort_keys=False)


def lists_from_json(graph: Graph, text: str) -> ListAssignment:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise StructuralError("lists JSON must be an object")
    return ListAssignment.from_dict(graph, data)


def color_set_from_json(values) -> ColorSet:
    return ColorSet.from_iterable(values)
