"""Immutable primitives for set coloring over a small color universe.

Colors are positive integers packed into bit masks (color ``c`` occupies bit
``c - 1``), graphs are label-addressed adjacency structures, a list assignment
gives each vertex its set of allowed colors, and a set coloring assigns a
fixed-size color set to each (possibly partial) vertex.  Everything here is
immutable after construction, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

#: Upper bound on usable color indices.  Named gadget data stays below 17;
#: sampled half-list universes for the largest gadget reach 102.
MAX_COLOR = 128

__all__ = [
    "MAX_COLOR",
    "StructuralError",
    "ColorSet",
    "Graph",
    "ListAssignment",
    "SetColoring",
    "Gadget",
    "is_proper",
    "respects_lists",
    "half_list_valid",
]


class StructuralError(ValueError):
    """A vertex, label, color, or domain is outside its container's range."""


@dataclass(frozen=True, slots=True)
class ColorSet:
    """Set of colors from ``{1..MAX_COLOR}`` stored as a bit mask."""

    mask: int = 0

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> MAX_COLOR:
            raise StructuralError(f"color mask out of range: {self.mask:#x}")

    @classmethod
    def of(cls, *colors: int) -> "ColorSet":
        return cls.from_iterable(colors)

    @classmethod
    def from_iterable(cls, colors: Iterable[int]) -> "ColorSet":
        mask = 0
        for c in colors:
            if not 1 <= c <= MAX_COLOR:
                raise StructuralError(f"color {c} outside 1..{MAX_COLOR}")
            mask |= 1 << (c - 1)
        return cls(mask)

    @classmethod
    def span(cls, lo: int, hi: int) -> "ColorSet":
        """Inclusive range ``{lo..hi}``."""
        return cls.from_iterable(range(lo, hi + 1))

    def __contains__(self, color: int) -> bool:
        return 1 <= color <= MAX_COLOR and (self.mask >> (color - 1)) & 1 == 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length()
            m ^= low

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask | other.mask)

    def __and__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask & other.mask)

    def __sub__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask & ~other.mask)

    def issubset(self, other: "ColorSet") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "ColorSet") -> bool:
        return self.mask & other.mask == 0

    def colors(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        if not self.mask:
            return "ColorSet()"
        return "ColorSet({%s})" % ", ".join(map(str, self))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with unique display labels per vertex.

    ``adj[v]`` is the sorted tuple of neighbors of ``v``; ``edge_list`` holds
    each edge once as ``(u, v)`` with ``u < v``, sorted.  Use :meth:`build` to
    construct with validation (no loops, no duplicate edges or labels).
    """

    labels: tuple[str, ...]
    adj: tuple[tuple[int, ...], ...]
    edge_list: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {lab: i for i, lab in enumerate(self.labels)}
        )

    @classmethod
    def build(
        cls,
        labels: Iterable[str],
        edges: Iterable[tuple[str | int, str | int]],
    ) -> "Graph":
        labels = tuple(labels)
        index: dict[str, int] = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise StructuralError(f"duplicate vertex label {lab!r}")
            index[lab] = i
        n = len(labels)
        seen: set[int] = set()
        pairs: list[tuple[int, int]] = []
        for a, b in edges:
            u = index[a] if isinstance(a, str) else a
            v = index[b] if isinstance(b, str) else b
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralError(f"edge ({a!r}, {b!r}) references unknown vertex")
            if u == v:
                raise StructuralError(f"self-loop at {labels[u]!r}")
            if u > v:
                u, v = v, u
            key = u * n + v
            if key in seen:
                raise StructuralError(
                    f"duplicate edge ({labels[u]!r}, {labels[v]!r})"
                )
            seen.add(key)
            pairs.append((u, v))
        pairs.sort()
        neigh: list[list[int]] = [[] for _ in range(n)]
        for u, v in pairs:
            neigh[u].append(v)
            neigh[v].append(u)
        adj = tuple(tuple(sorted(ns)) for ns in neigh)
        return cls(labels, adj, tuple(pairs))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    def vertex(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise StructuralError(f"no vertex labelled {label!r}") from None

    def label(self, v: int) -> str:
        return self.labels[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, labels: Sequence[str]) -> "Graph":
        """Induced subgraph on the given labels, vertices in the given order."""
        keep = [self.vertex(lab) for lab in labels]
        keep_set = set(keep)
        if len(keep_set) != len(keep):
            raise StructuralError("induced(): repeated label")
        renum = {old: new for new, old in enumerate(keep)}
        edges = [
            (renum[u], renum[v])
            for u, v in self.edge_list
            if u in keep_set and v in keep_set
        ]
        return Graph.build([self.labels[v] for v in keep], edges)


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists, indexed like the vertices of one graph."""

    lists: tuple[ColorSet, ...]

    @classmethod
    def from_dict(cls, graph: Graph, mapping: Mapping[str, Iterable[int]]) -> "ListAssignment":
        if set(mapping) != set(graph.labels):
            missing = set(graph.labels) - set(mapping)
            extra = set(mapping) - set(graph.labels)
            raise StructuralError(
                f"list assignment domain mismatch (missing={sorted(missing)!r},"
                f" extra={sorted(extra)!r})"
            )
        return cls(tuple(ColorSet.from_iterable(mapping[lab]) for lab in graph.labels))

    @classmethod
    def uniform(cls, n: int, colors: ColorSet) -> "ListAssignment":
        return cls((colors,) * n)

    def __getitem__(self, v: int) -> ColorSet:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    def __iter__(self) -> Iterator[ColorSet]:
        return iter(self.lists)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(cs) for cs in self.lists)

    def masks(self) -> tuple[int, ...]:
        return tuple(cs.mask for cs in self.lists)

    def to_dict(self, graph: Graph) -> dict[str, list[int]]:
        if len(self.lists) != graph.n:
            raise StructuralError("list assignment does not match graph")
        return {graph.labels[v]: list(self.lists[v]) for v in range(graph.n)}


@dataclass(frozen=True)
class SetColoring:
    """Partial or total assignment of ``block_size``-element color sets."""

    assignment: tuple[ColorSet | None, ...]
    block_size: int

    def __post_init__(self) -> None:
        if self.block_size < 1:
            raise ValueError(f"block size must be positive, got {self.block_size}")
        for v, cs in enumerate(self.assignment):
            if cs is not None and len(cs) != self.block_size:
                raise StructuralError(
                    f"vertex {v} carries {len(cs)} colors, expected {self.block_size}"
                )

    @classmethod
    def empty(cls, n: int, block_size: int) -> "SetColoring":
        return cls((None,) * n, block_size)

    @classmethod
    def from_dict(
        cls, graph: Graph, mapping: Mapping[str, Iterable[int]], block_size: int
    ) -> "SetColoring":
        assignment: list[ColorSet | None] = [None] * graph.n
        for lab, colors in mapping.items():
            assignment[graph.vertex(lab)] = ColorSet.from_iterable(colors)
        return cls(tuple(assignment), block_size)

    def __getitem__(self, v: int) -> ColorSet | None:
        return self.assignment[v]

    def assign(self, v: int, colors: ColorSet) -> "SetColoring":
        new = list(self.assignment)
        new[v] = colors
        return SetColoring(tuple(new), self.block_size)

    def assigned_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, cs in enumerate(self.assignment) if cs is not None)

    def is_total(self) -> bool:
        return all(cs is not None for cs in self.assignment)

    def to_dict(self, graph: Graph) -> dict[str, list[int]]:
        return {
            graph.labels[v]: list(cs)
            for v, cs in enumerate(self.assignment)
            if cs is not None
        }


def is_proper(graph: Graph, coloring: SetColoring) -> bool:
    """True iff every pair of assigned adjacent vertices has disjoint sets.

    Unassigned vertices are ignored, so a partial coloring is proper exactly
    when it is proper on the subgraph induced by its assigned vertices.
    """
    a = coloring.assignment
    if len(a) != graph.n:
        raise StructuralError(
            f"coloring covers {len(a)} vertices, graph has {graph.n}"
        )
    for u, v in graph.edge_list:
        cu = a[u]
        cv = a[v]
        if cu is not None and cv is not None and cu.mask & cv.mask:
            return False
    return True


def respects_lists(lists: ListAssignment, coloring: SetColoring) -> bool:
    """True iff every assigned vertex's colors are a subset of its list."""
    if len(lists) != len(coloring.assignment):
        raise StructuralError("list assignment and coloring domains differ")
    for cs, allowed in zip(coloring.assignment, lists.lists):
        if cs is not None and cs.mask & ~allowed.mask:
            return False
    return True


@dataclass(frozen=True)
class Gadget:
    """A graph with even-size base lists and designated vertices ``v1``, ``v3``
    plus a vertex set ``s_set`` disjoint from them.

    Half-list assignments for the gadget give every vertex exactly half as
    many colors as its base list; they are *not* required to draw those
    colors from the base list.
    """

    graph: Graph
    base_lists: ListAssignment
    v1: int
    v3: int
    s_set: frozenset[int]

    def __post_init__(self) -> None:
        n = self.graph.n
        if len(self.base_lists) != n:
            raise StructuralError("base lists do not cover the gadget graph")
        for v, cs in enumerate(self.base_lists):
            if len(cs) == 0 or len(cs) % 2 != 0:
                raise StructuralError(
                    f"base list of {self.graph.labels[v]!r} has odd size {len(cs)}"
                )
        if not (0 <= self.v1 < n and 0 <= self.v3 < n):
            raise StructuralError("designated vertex out of range")
        if self.v1 == self.v3:
            raise StructuralError("designated vertices must be distinct")
        if self.s_set & {self.v1, self.v3}:
            raise StructuralError("s_set must avoid the designated vertices")
        if any(not 0 <= s < n for s in self.s_set):
            raise StructuralError("s_set vertex out of range")

    @classmethod
    def build(
        cls,
        graph: Graph,
        base_lists: ListAssignment,
        v1: str,
        v3: str,
        s_labels: Iterable[str] = (),
    ) -> "Gadget":
        return cls(
            graph,
            base_lists,
            graph.vertex(v1),
            graph.vertex(v3),
            frozenset(graph.vertex(s) for s in s_labels),
        )

    def half_sizes(self) -> tuple[int, ...]:
        return tuple(len(cs) // 2 for cs in self.base_lists)


def half_list_valid(gadget: Gadget, candidate: ListAssignment) -> bool:
    """True iff ``candidate`` has exactly half the base list size everywhere."""
    if len(candidate) != gadget.graph.n:
        raise StructuralError("candidate lists do not cover the gadget graph")
    return candidate.sizes() == gadget.half_sizes()
