"""Constructors for the gadget catalog and the final uniform-list graph.

The catalog is a chain of gadgets: a 5-cycle whose base lists admit no
2-set coloring, a 7-vertex extension forcing specific pairs along an attached
path, and three progressively larger gadgets whose 2-set colorings force
{7,8} onto designated vertices, culminating in g5 (37 vertices) which is
colorable from every half-list assignment but has no 2-set coloring from its
base lists.  The final construction glues one copy of g5 per 2-set coloring
of a 4-clique onto that clique, yielding uniform lists of size 8.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ColorSet, Gadget, Graph, ListAssignment, StructuralError
from .solver import all_colorings

__all__ = [
    "GadgetConsistencyError",
    "CatalogEntry",
    "CATALOG",
    "build",
    "build_pentagon",
    "build_g1",
    "build_g2",
    "build_g3",
    "build_g4",
    "build_g5",
    "FinalConstruction",
    "build_final",
    "psi_key",
    "apex_fanout",
    "build_amplified",
]


class GadgetConsistencyError(RuntimeError):
    """A constructed gadget disagrees with its recorded shape."""


def _cs(*colors: int) -> tuple[int, ...]:
    return colors


_C16 = tuple(range(1, 7))  # {1..6}
_C18 = tuple(range(1, 9))  # {1..8}
_C1478 = (1, 2, 3, 4, 7, 8)
_C14 = (1, 2, 3, 4)


def build_pentagon() -> Gadget:
    graph = Graph.build(
        ("v1", "v2", "v3", "v4", "v5"),
        [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1")],
    )
    lists = ListAssignment.from_dict(
        graph,
        {
            "v1": _cs(1, 2, 5, 6),
            "v2": _cs(1, 4, 5, 6),
            "v3": _cs(3, 4, 5, 6),
            "v4": _cs(3, 4, 5, 6),
            "v5": _cs(2, 4, 5, 6),
        },
    )
    return Gadget.build(graph, lists, "v1", "v3")


def build_g1() -> Gadget:
    graph = Graph.build(
        ("v1", "v2", "v3", "v4", "v5", "x", "y"),
        [
            ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1"),
            ("v1", "x"), ("x", "y"), ("y", "v3"),
        ],
    )
    lists = ListAssignment.from_dict(
        graph,
        {
            "v1": _C16,
            "v2": _cs(1, 4, 5, 6),
            "v3": _C16,
            "v4": _cs(3, 4, 5, 6),
            "v5": _cs(2, 4, 5, 6),
            "x": _C14,
            "y": _cs(1, 2),
        },
    )
    return Gadget.build(graph, lists, "v1", "v3")


def build_g2() -> Gadget:
    cycle = ("v1", "u2", "v3", "u4", "u5")
    edges = [
        ("v1", "u2"), ("u2", "v3"), ("v3", "u4"), ("u4", "u5"), ("u5", "v1"),
    ]
    edges += [("y1", c) for c in cycle]
    edges += [("y2", "y3"), ("y3", "y4"), ("y4", "y2"), ("y1", "y2")]
    graph = Graph.build(cycle + ("y1", "y2", "y3", "y4"), edges)
    table = {c: _C16 for c in cycle}
    table.update({"y1": _C18, "y2": _C1478, "y3": _C14, "y4": _C1478})
    lists = ListAssignment.from_dict(graph, table)
    return Gadget.build(graph, lists, "v1", "v3", ("y4",))


def _z(i: int, j: int) -> str:
    return "z_{%d,%d}" % (i, j)


def build_g3() -> Gadget:
    g2 = build_g2()
    labels = list(g2.graph.labels)
    edges = [(labels[u], labels[v]) for u, v in g2.graph.edge_list]
    table = {lab: tuple(g2.base_lists[v]) for v, lab in enumerate(labels)}
    for i in (1, 2):
        labels += [_z(i, j) for j in range(1, 8)]
        edges += [("y4", _z(i, 1)), ("y4", _z(i, 2))]
        edges += [
            (_z(i, j), _z(i, k))
            for j in range(1, 5)
            for k in range(j + 1, 5)
            if (j, k) != (1, 2)
        ]
        edges += [
            (_z(i, 5), _z(i, 6)), (_z(i, 6), _z(i, 7)), (_z(i, 5), _z(i, 7)),
            (_z(i, 4), _z(i, 5)),
        ]
        table.update(
            {
                _z(i, 1): _cs(1, 2, 3, 6 + i),
                _z(i, 2): _cs(4, 5, 6, 6 + i),
                _z(i, 3): _C16,
                _z(i, 4): _C18,
                _z(i, 5): _C1478,
                _z(i, 6): _C14,
                _z(i, 7): _C1478,
            }
        )
    graph = Graph.build(labels, edges)
    lists = ListAssignment.from_dict(graph, table)
    return Gadget.build(graph, lists, "v1", "v3", (_z(1, 7), _z(2, 7)))


def _w(i: int, j: int) -> str:
    return "w_{%d,%d}" % (i, j)


def build_g4() -> Gadget:
    g3 = build_g3()
    labels = list(g3.graph.labels)
    edges = [(labels[u], labels[v]) for u, v in g3.graph.edge_list]
    table = {lab: tuple(g3.base_lists[v]) for v, lab in enumerate(labels)}
    labels += ["w1", "w2", "w3"]
    edges += [("w1", "w2"), ("w2", "w3"), ("w1", "w3")]
    table.update({"w1": _C1478, "w2": _C14, "w3": _C1478})
    for i in (1, 2):
        labels += [_w(i, 1), _w(i, 2), _w(i, 3)]
        edges += [
            (_w(i, 1), _w(i, 2)), (_w(i, 2), _w(i, 3)), (_w(i, 1), _w(i, 3)),
        ]
        table.update({_w(i, 1): _C1478, _w(i, 2): _C14, _w(i, 3): _C1478})
    edges += [
        (_z(1, 7), "w1"), (_z(2, 7), "w1"), ("w3", _w(1, 1)), ("w3", _w(2, 1)),
    ]
    graph = Graph.build(labels, edges)
    lists = ListAssignment.from_dict(graph, table)
    return Gadget.build(graph, lists, "v1", "v3", (_w(1, 3), _w(2, 3)))


def build_g5() -> Gadget:
    g4 = build_g4()
    g1 = build_g1()
    for shared in ("v1", "v3"):
        a = g4.base_lists[g4.graph.vertex(shared)]
        b = g1.base_lists[g1.graph.vertex(shared)]
        if a != b:
            raise GadgetConsistencyError(
                f"shared vertex {shared!r} carries different base lists"
            )
    labels = list(g4.graph.labels)
    edges = [(labels[u], labels[v]) for u, v in g4.graph.edge_list]
    table = {lab: tuple(g4.base_lists[v]) for v, lab in enumerate(labels)}
    labels += ["v2", "v4", "v5", "x", "y"]
    g1_labels = g1.graph.labels
    edges += [(g1_labels[u], g1_labels[v]) for u, v in g1.graph.edge_list]
    bumped = {"v2", "v4", "x", "y"}
    for lab in ("v2", "v4", "v5", "x", "y"):
        base = g1.base_lists[g1.graph.vertex(lab)]
        if lab in bumped:
            base = base | ColorSet.of(7, 8)
        table[lab] = tuple(base)
    edges += [(_w(1, 3), "v2"), (_w(1, 3), "v4"), (_w(2, 3), "x"), (_w(2, 3), "y")]
    graph = Graph.build(labels, edges)
    lists = ListAssignment.from_dict(graph, table)
    return Gadget.build(graph, lists, "v1", "v3")


@dataclass(frozen=True)
class CatalogEntry:
    gadget_id: str
    expected_vertices: int
    expected_edges: int


CATALOG: dict[str, CatalogEntry] = {
    "pentagon": CatalogEntry("pentagon", 5, 5),
    "g1": CatalogEntry("g1", 7, 8),
    "g2": CatalogEntry("g2", 9, 14),
    "g3": CatalogEntry("g3", 23, 36),
    "g4": CatalogEntry("g4", 32, 49),
    "g5": CatalogEntry("g5", 37, 61),
}

_BUILDERS = {
    "pentagon": build_pentagon,
    "g1": build_g1,
    "g2": build_g2,
    "g3": build_g3,
    "g4": build_g4,
    "g5": build_g5,
}


def build(gadget_id: str) -> Gadget:
    """Build a catalog gadget and verify its vertex/edge counts."""
    try:
        entry = CATALOG[gadget_id]
    except KeyError:
        raise ValueError(
            f"unknown gadget {gadget_id!r}; expected one of {sorted(CATALOG)}"
        ) from None
    gadget = _BUILDERS[gadget_id]()
    got = (gadget.graph.n, gadget.graph.edge_count)
    want = (entry.expected_vertices, entry.expected_edges)
    if got != want:
        raise GadgetConsistencyError(
            f"{gadget_id}: built {got[0]} vertices / {got[1]} edges,"
            f" expected {want[0]} / {want[1]}"
        )
    return gadget


def apex_fanout(g5: Gadget) -> tuple[int, ...]:
    """Per-vertex count of apex vertices each g5 copy-vertex joins: a vertex
    with a base list of size 2k joins the first 4-k apexes when k is 2 or 3,
    and none when k is 4."""
    out = []
    for cs in g5.base_lists:
        k = len(cs) // 2
        out.append(4 - k if k in (2, 3) else 0)
    return tuple(out)


def psi_key(psi: tuple[ColorSet, ...]) -> str:
    """Stable string key for a clique coloring, e.g. ``9,10|11,12|...``."""
    return "|".join(",".join(str(c) for c in cs) for cs in psi)


@dataclass(frozen=True)
class FinalConstruction:
    """The uniform-list graph: a 4-clique plus one g5 copy per clique
    coloring, each copy wired to the clique so every list has size 8."""

    graph: Graph
    lists: ListAssignment
    apex: tuple[int, int, int, int]
    copy_index: dict  # psi key -> (start, stop) vertex range
    psi_list: tuple  # tuple of psi (each a 4-tuple of ColorSet), copy order
    template: Gadget  # the g5 gadget every copy instantiates

    @property
    def copy_count(self) -> int:
        return len(self.psi_list)


def build_final(apex_lists: ColorSet = ColorSet.span(9, 16)) -> FinalConstruction:
    """Assemble the final construction.

    ``apex_lists`` must hold 8 colors disjoint from every g5 base list.  The
    copies are ordered lexicographically by the 2-subsets assigned to
    (r1, r2, r3, r4); vertex numbering is apex first, then copies in that
    order, each in g5 vertex order.
    """
    if len(apex_lists) != 8:
        raise ValueError(f"apex lists must have 8 colors, got {len(apex_lists)}")
    g5 = build_g5()
    g5_colors = ColorSet(0)
    for cs in g5.base_lists:
        g5_colors = g5_colors | cs
    if not apex_lists.isdisjoint(g5_colors):
        raise ValueError("apex colors collide with gadget list colors")

    apex_labels = ("r1", "r2", "r3", "r4")
    k4 = Graph.build(
        apex_labels,
        [(a, b) for i, a in enumerate(apex_labels) for b in apex_labels[i + 1:]],
    )
    clique_lists = ListAssignment.uniform(4, apex_lists)
    colorings = all_colorings(k4, clique_lists, 2)
    psis = sorted(
        (tuple(coloring.assignment[r] for r in range(4)) for coloring in colorings),
        key=lambda psi: tuple(tuple(cs) for cs in psi),
    )

    fanout = apex_fanout(g5)
    g5_labels = g5.graph.labels
    g5_edges = g5.graph.edge_list
    g5_masks = g5.base_lists.masks()
    n_copy = len(g5_labels)

    labels: list[str] = list(apex_labels)
    edges: list[tuple[int, int]] = list(k4.edge_list)
    list_masks: list[int] = [apex_lists.mask] * 4
    copy_index: dict[str, tuple[int, int]] = {}

    for idx, psi in enumerate(psis):
        start = len(labels)
        prefix = f"c{idx:04d}:"
        labels.extend(prefix + lab for lab in g5_labels)
        edges.extend((start + u, start + v) for u, v in g5_edges)
        for j in range(n_copy):
            psi_bits = 0
            for r in range(fanout[j]):
                edges.append((r, start + j))
                psi_bits |= psi[r].mask
            list_masks.append(g5_masks[j] | psi_bits)
        copy_index[psi_key(psi)] = (start, start + n_copy)

    graph = Graph.build(labels, edges)
    lists = ListAssignment(tuple(ColorSet(m) for m in list_masks))
    return FinalConstruction(
        graph, lists, (0, 1, 2, 3), copy_index, tuple(psis), g5
    )


def build_amplified(base: Graph, a: int) -> Graph:
    """Disjoint union of C(2(a+1), 2) copies of ``base`` plus one vertex
    adjacent to everything."""
    if a < 4:
        raise ValueError(f"amplification starts at 4, got {a}")
    copies = (2 * (a + 1)) * (2 * (a + 1) - 1) // 2
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    for i in range(copies):
        start = len(labels)
        labels.extend(f"copy{i:03d}/{lab}" for lab in base.labels)
        edges.extend((start + u, start + v) for u, v in base.edge_list)
    apex = len(labels)
    labels.append("apex")
    edges.extend((v, apex) for v in range(apex))
    return Graph.build(labels, edges)
