"""Exact backtracking search for (L:b)-colorings.

The search assigns whole b-subsets to vertices, picking the vertex with the
fewest remaining candidate subsets first (ties by vertex index) and trying
candidates in ascending bit-mask order, so identical inputs always produce
identical results.  Assigning a vertex removes its colors from each uncolored
neighbor's remaining candidates; the branch fails as soon as some vertex has
no candidate left.  SAT answers come with a verified witness; UNSAT answers
are exhaustive.

Candidate sets are precomputed per vertex and tracked as bitmasks over
candidate indices, with per-color "kill" masks making propagation O(1) per
affected neighbor.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .model import (
    ColorSet,
    Graph,
    ListAssignment,
    SetColoring,
    StructuralError,
    is_proper,
    respects_lists,
)

__all__ = [
    "SolverTimeout",
    "DomainConstraint",
    "SolveResult",
    "find_coloring",
    "count_colorings",
    "all_colorings",
    "forced_value_check",
]

_DEADLINE_STRIDE = 4096


class SolverTimeout(Exception):
    """Raised when a search exceeds its deadline."""


def _mask_of(colors: Iterable[int]) -> int:
    mask = 0
    for c in colors:
        mask |= 1 << (c - 1)
    return mask


@dataclass(frozen=True)
class DomainConstraint:
    """Per-vertex restrictions on the b-subsets a vertex may receive.

    A vertex may carry any combination of: an explicit set of allowed
    b-subsets, forbidden b-subsets, colors the subset must contain, and
    colors it must avoid.  Constraints may only mention colors present in
    the vertex's list.  Builder methods return new instances.
    """

    allowed: dict = field(default_factory=dict)  # vertex -> frozenset of masks
    forbidden: dict = field(default_factory=dict)  # vertex -> frozenset of masks
    required: dict = field(default_factory=dict)  # vertex -> color mask
    avoided: dict = field(default_factory=dict)  # vertex -> color mask

    @classmethod
    def none(cls) -> "DomainConstraint":
        return cls()

    def allow_only(
        self, v: int, subsets: Iterable[Iterable[int]]
    ) -> "DomainConstraint":
        """Restrict ``v`` to the given subsets (intersected with any earlier
        ``allow_only`` for the same vertex)."""
        masks = frozenset(_mask_of(s) for s in subsets)
        if v in self.allowed:
            masks = self.allowed[v] & masks
        new = dict(self.allowed)
        new[v] = masks
        return DomainConstraint(new, dict(self.forbidden), dict(self.required), dict(self.avoided))

    def forbid(self, v: int, colors: Iterable[int]) -> "DomainConstraint":
        """Forbid the exact subset ``colors`` at vertex ``v``."""
        new = dict(self.forbidden)
        new[v] = new.get(v, frozenset()) | {_mask_of(colors)}
        return DomainConstraint(dict(self.allowed), new, dict(self.required), dict(self.avoided))

    def require_color(self, v: int, color: int) -> "DomainConstraint":
        new = dict(self.required)
        new[v] = new.get(v, 0) | 1 << (color - 1)
        return DomainConstraint(dict(self.allowed), dict(self.forbidden), new, dict(self.avoided))

    def avoid_color(self, v: int, color: int) -> "DomainConstraint":
        new = dict(self.avoided)
        new[v] = new.get(v, 0) | 1 << (color - 1)
        return DomainConstraint(dict(self.allowed), dict(self.forbidden), dict(self.required), new)

    def is_empty(self) -> bool:
        return not (self.allowed or self.forbidden or self.required or self.avoided)

    def permits(self, v: int, mask: int) -> bool:
        """Whether the subset ``mask`` is acceptable at vertex ``v``."""
        allowed = self.allowed.get(v)
        if allowed is not None and mask not in allowed:
            return False
        if mask in self.forbidden.get(v, ()):  # frozenset membership
            return False
        req = self.required.get(v, 0)
        if mask & req != req:
            return False
        if mask & self.avoided.get(v, 0):
            return False
        return True

    def validate(self, graph: Graph, lists: ListAssignment, b: int) -> None:
        n = graph.n
        for source in (self.allowed, self.forbidden, self.required, self.avoided):
            for v in source:
                if not 0 <= v < n:
                    raise StructuralError(f"constraint references vertex {v}")
        for v, masks in list(self.allowed.items()) + list(self.forbidden.items()):
            for mask in masks:
                if mask & ~lists[v].mask:
                    raise StructuralError(
                        f"constraint at {graph.labels[v]!r} mentions colors"
                        " outside its list"
                    )
                if mask.bit_count() != b:
                    raise StructuralError(
                        f"constraint subset at {graph.labels[v]!r} has size"
                        f" {mask.bit_count()}, expected {b}"
                    )
        for v, mask in list(self.required.items()) + list(self.avoided.items()):
            if mask & ~lists[v].mask:
                raise StructuralError(
                    f"constraint at {graph.labels[v]!r} mentions colors"
                    " outside its list"
                )


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one solver invocation.

    ``status`` is ``"SAT"`` (with a total, verified witness) or ``"UNSAT"``
    (exhaustive).  ``nodes_explored`` counts value assignments tried.
    """

    status: str
    witness: SetColoring | None
    nodes_explored: int
    duration: float

    def to_dict(self, graph: Graph | None = None) -> dict:
        doc: dict = {
            "status": self.status,
            "nodes_explored": self.nodes_explored,
            "duration_s": round(self.duration, 6),
        }
        if self.witness is not None and graph is not None:
            doc["witness"] = self.witness.to_dict(graph)
        elif self.witness is not None:
            doc["witness"] = {
                str(v): list(cs)
                for v, cs in enumerate(self.witness.assignment)
                if cs is not None
            }
        return doc


class _Instance:
    """Prepared search state: candidate tables and propagation masks."""

    __slots__ = ("n", "adj", "cand", "kills", "full_alive")

    def __init__(self, graph: Graph, lists: ListAssignment, b: int,
                 constraints: DomainConstraint | None):
        n = graph.n
        self.n = n
        self.adj = graph.adj
        cand: list[tuple[int, ...]] = []
        kills: list[dict[int, int]] = []
        full: list[int] = []
        for v in range(n):
            lmask = lists[v].mask
            if b == 1:
                masks = []
                m = lmask
                while m:
                    low = m & -m
                    masks.append(low)
                    m ^= low
            else:
                bits = []
                m = lmask
                while m:
                    low = m & -m
                    bits.append(low)
                    m ^= low
                masks = [sum(combo) for combo in combinations(bits, b)]
            if constraints is not None:
                masks = [mk for mk in masks if constraints.permits(v, mk)]
            masks.sort()
            cand.append(tuple(masks))
            kill: dict[int, int] = {}
            for idx, mk in enumerate(masks):
                m = mk
                while m:
                    low = m & -m
                    m ^= low
                    kill[low.bit_length()] = kill.get(low.bit_length(), 0) | 1 << idx
            kills.append(kill)
            full.append((1 << len(masks)) - 1)
        self.cand = cand
        self.kills = kills
        self.full_alive = full


def _check_partial(
    graph: Graph, lists: ListAssignment, b: int, partial: SetColoring | None
) -> list[tuple[int, int]]:
    if partial is None:
        return []
    if partial.block_size != b:
        raise ValueError(
            f"partial coloring has block size {partial.block_size}, expected {b}"
        )
    if not is_proper(graph, partial):
        raise ValueError("partial coloring is not proper")
    if not respects_lists(lists, partial):
        raise ValueError("partial coloring does not respect the lists")
    return [
        (v, cs.mask) for v, cs in enumerate(partial.assignment) if cs is not None
    ]


def _run(
    inst: _Instance,
    pinned: list[tuple[int, int]],
    deadline: float | None,
    collect: list | None,
    stop_after_first: bool,
) -> tuple[int, list[int] | None, int]:
    """Core DFS.  Returns (solution_count, first_witness_masks, nodes).

    The uncolored vertices are split into connected components (edges among
    colored vertices no longer constrain anything), which are solved
    independently: solution counts multiply and a single unsatisfiable
    component refutes the whole instance.  Component order (by smallest
    vertex index), MRV within a component, and ascending value order keep
    the search deterministic.  When ``collect`` is given every solution must
    be materialized, so splitting is disabled and the plain DFS visits each
    total coloring once.
    """
    if deadline is not None and time.monotonic() > deadline:
        raise SolverTimeout("deadline already passed before search started")
    n = inst.n
    adj = inst.adj
    cand = inst.cand
    kills = inst.kills
    alive = list(inst.full_alive)
    colored = [0] * n
    nodes = 0
    split = collect is None
    # Undo log: (u, old_alive) restores a domain, (-v - 1, 0) unassigns v.
    trail: list[tuple[int, int]] = []

    # Pin the partial coloring and propagate it.
    for v, mask in pinned:
        if mask not in cand[v]:
            # pinned value conflicts with the vertex's domain constraints
            return 0, None, 0
        colored[v] = mask
    for v, mask in pinned:
        for u in adj[v]:
            if colored[u]:
                continue
            kill = 0
            m = mask
            ku = kills[u]
            while m:
                low = m & -m
                m ^= low
                kill |= ku.get(low.bit_length(), 0)
            alive[u] &= ~kill
            if alive[u] == 0:
                return 0, None, 0

    def undo_to(mark: int) -> None:
        while len(trail) > mark:
            x, old = trail.pop()
            if x >= 0:
                alive[x] = old
            else:
                colored[-x - 1] = 0

    def components(vs: list[int]) -> list[list[int]]:
        unseen = set(vs)
        comps: list[list[int]] = []
        for v in vs:
            if v not in unseen:
                continue
            unseen.remove(v)
            comp = [v]
            stack = [v]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w in unseen:
                        unseen.remove(w)
                        comp.append(w)
                        stack.append(w)
            comp.sort()
            comps.append(comp)
        return comps

    def solve(vs: list[int]) -> int:
        if not vs:
            if collect is not None:
                collect.append(list(colored))
            return 1
        if split and len(vs) > 1:
            comps = components(vs)
        else:
            comps = [vs]
        mark = len(trail)
        result = 1
        for comp in comps:
            cnt = branch(comp)
            if cnt == 0:
                undo_to(mark)  # drop assignments kept by earlier components
                return 0
            result *= cnt
        return result

    def branch(comp: list[int]) -> int:
        nonlocal nodes
        # MRV: fewest live candidates, ties by vertex index.  Counts are
        # always >= 1 here because propagation fails eagerly on empty
        # domains, except for vertices whose candidate set started empty.
        best_v = -1
        best_cnt = 1 << 60
        for v in comp:
            c = alive[v].bit_count()
            if c < best_cnt:
                best_v = v
                best_cnt = c
                if c <= 1:
                    break
        v = best_v
        rest = [u for u in comp if u != v]
        cand_v = cand[v]
        adj_v = adj[v]
        live = alive[v]
        total = 0
        while live:
            low = live & -live
            live ^= low
            mask = cand_v[low.bit_length() - 1]
            nodes += 1
            if deadline is not None and nodes % _DEADLINE_STRIDE == 0:
                if time.monotonic() > deadline:
                    raise SolverTimeout(f"search exceeded deadline after {nodes} nodes")
            mark = len(trail)
            colored[v] = mask
            trail.append((-v - 1, 0))
            ok = True
            for u in adj_v:
                if colored[u]:
                    continue
                a = alive[u]
                kill = 0
                m = mask
                ku = kills[u]
                while m:
                    lo = m & -m
                    m ^= lo
                    kill |= ku.get(lo.bit_length(), 0)
                na = a & ~kill
                if na != a:
                    trail.append((u, a))
                    alive[u] = na
                    if na == 0:
                        ok = False
                        break
            if ok:
                sub = solve(rest)
                if sub:
                    if stop_after_first:
                        return 1  # keep assignments: colored[] is the witness
                    total += sub
            undo_to(mark)
        return total

    count = solve([v for v in range(n) if not colored[v]])
    first = list(colored) if count and stop_after_first else None
    return count, first, nodes


def _witness_from_masks(masks: list[int], b: int) -> SetColoring:
    return SetColoring(tuple(ColorSet(m) for m in masks), b)


def _prepare(
    graph: Graph,
    lists: ListAssignment,
    b: int,
    constraints: DomainConstraint | None,
) -> _Instance:
    if b < 1:
        raise ValueError(f"block size must be positive, got {b}")
    if len(lists) != graph.n:
        raise StructuralError("list assignment does not match graph")
    if constraints is not None:
        constraints.validate(graph, lists, b)
    return _Instance(graph, lists, b, constraints)


def _assert_witness(
    graph: Graph,
    lists: ListAssignment,
    b: int,
    constraints: DomainConstraint | None,
    partial: SetColoring | None,
    witness: SetColoring,
) -> None:
    assert witness.is_total(), "witness is not total"
    assert is_proper(graph, witness), "witness is not proper"
    assert respects_lists(lists, witness), "witness leaves the lists"
    if constraints is not None:
        for v, cs in enumerate(witness.assignment):
            assert cs is not None and constraints.permits(v, cs.mask), (
                f"witness violates constraints at {graph.labels[v]!r}"
            )
    if partial is not None:
        for v, cs in enumerate(partial.assignment):
            if cs is not None:
                assert witness.assignment[v] == cs, "witness does not extend partial"


def find_coloring(
    graph: Graph,
    lists: ListAssignment,
    b: int,
    constraints: DomainConstraint | None = None,
    partial: SetColoring | None = None,
    deadline: float | None = None,
) -> SolveResult:
    """Search for a total proper (L:b)-coloring extending ``partial``.

    Returns SAT with a verified witness, or UNSAT after exhausting the
    (propagation-pruned) search space.  ``deadline`` is an absolute
    ``time.monotonic()`` bound; exceeding it raises :class:`SolverTimeout`.
    """
    t0 = time.perf_counter()
    inst = _prepare(graph, lists, b, constraints)
    pinned = _check_partial(graph, lists, b, partial)
    count, first, nodes = _run(inst, pinned, deadline, None, stop_after_first=True)
    duration = time.perf_counter() - t0
    if count == 0:
        return SolveResult("UNSAT", None, nodes, duration)
    witness = _witness_from_masks(first, b)  # type: ignore[arg-type]
    _assert_witness(graph, lists, b, constraints, partial, witness)
    return SolveResult("SAT", witness, nodes, duration)


def count_colorings(
    graph: Graph,
    lists: ListAssignment,
    b: int,
    constraints: DomainConstraint | None = None,
    deadline: float | None = None,
) -> int:
    """Exact number of total proper list-respecting (L:b)-colorings."""
    inst = _prepare(graph, lists, b, constraints)
    count, _, _ = _run(inst, [], deadline, None, stop_after_first=False)
    return count


def all_colorings(
    graph: Graph,
    lists: ListAssignment,
    b: int,
    constraints: DomainConstraint | None = None,
    deadline: float | None = None,
) -> list[SetColoring]:
    """All colorings, in the solver's deterministic search order."""
    inst = _prepare(graph, lists, b, constraints)
    collect: list[list[int]] = []
    _run(inst, [], deadline, collect, stop_after_first=False)
    return [_witness_from_masks(masks, b) for masks in collect]


def forced_value_check(
    graph: Graph,
    lists: ListAssignment,
    b: int,
    negated_claim: DomainConstraint,
    deadline: float | None = None,
) -> bool:
    """Verify a universal claim "every (L:b)-coloring satisfies P".

    ``negated_claim`` encodes the negation of P as domain restrictions; the
    claim holds iff the restricted instance is UNSAT.
    """
    return find_coloring(graph, lists, b, negated_claim, None, deadline).status == "UNSAT"
