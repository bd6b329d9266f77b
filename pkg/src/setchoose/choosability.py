"""Quantifier layer over the solver: "for every half-list assignment ..."

A half-list assignment's colorability depends only on which lists share
which colors, so any assignment is color-isomorphic to one over the universe
``{1..U}`` with ``U`` the sum of the half-list sizes.  Exhaustive checks
therefore enumerate one canonical representative per color-bijection orbit;
large gadgets, where that enumeration is astronomically big, are checked on
pseudo-random samples instead.

Canonical form: sort colors by their vertex-incidence bitmask (vertex 0 most
significant) in descending order and rename the i-th color to ``i + 1``.
Scanning vertices in order, each color's first occurrence is then the
smallest unused index, and two assignments are related by a color bijection
iff they canonicalize identically.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .model import (
    MAX_COLOR,
    ColorSet,
    Gadget,
    Graph,
    ListAssignment,
    SetColoring,
    StructuralError,
    half_list_valid,
)
from .solver import SolveResult, find_coloring

__all__ = [
    "CapacityError",
    "ListConstraint",
    "RelaxedVerdict",
    "ChoosabilityStats",
    "canonical_form",
    "enumerate_half_lists",
    "verify_universal_colorability",
    "find_colorability_counterexample",
    "check_relaxed_at",
    "verify_relaxed",
    "sample_half_lists",
    "structured_half_lists",
]

#: Universe bound for exhaustive enumeration (sum of half-list sizes).
ENUMERATION_UNIVERSE_BOUND = 64

#: Default cap on the estimated enumeration state count.
DEFAULT_MAX_STATES = 10**8


class CapacityError(RuntimeError):
    """Exhaustive enumeration is infeasible; use sampled verification."""


@dataclass(frozen=True)
class ListConstraint:
    """Side condition on a candidate half-list assignment."""

    kind: str  # "unconstrained" | "equal" | "max_intersection"
    u: int | None = None
    v: int | None = None
    k: int | None = None

    @classmethod
    def unconstrained(cls) -> "ListConstraint":
        return cls("unconstrained")

    @classmethod
    def equal(cls, u: int, v: int) -> "ListConstraint":
        return cls("equal", u, v)

    @classmethod
    def max_intersection(cls, u: int, v: int, k: int) -> "ListConstraint":
        return cls("max_intersection", u, v, k)

    def check_masks(self, masks: Sequence[int]) -> bool:
        if self.kind == "unconstrained":
            return True
        if self.kind == "equal":
            return masks[self.u] == masks[self.v]
        if self.kind == "max_intersection":
            return (masks[self.u] & masks[self.v]).bit_count() <= self.k
        raise ValueError(f"unknown constraint kind {self.kind!r}")

    def check(self, lists: ListAssignment) -> bool:
        return self.check_masks(lists.masks())

    def describe(self, graph: Graph) -> str:
        if self.kind == "unconstrained":
            return "unconstrained"
        a, b = graph.labels[self.u], graph.labels[self.v]
        if self.kind == "equal":
            return f"L({a}) = L({b})"
        return f"|L({a}) ∩ L({b})| <= {self.k}"


def _canonical_masks(masks: Sequence[int], n: int) -> tuple[int, ...]:
    incidence: dict[int, int] = {}
    for i, m in enumerate(masks):
        vbit = 1 << (n - 1 - i)
        while m:
            low = m & -m
            m ^= low
            c = low.bit_length()
            incidence[c] = incidence.get(c, 0) | vbit
    order = sorted(incidence, key=lambda c: (-incidence[c], c))
    out = [0] * n
    for rank, c in enumerate(order):
        bit = 1 << rank
        vm = incidence[c]
        while vm:
            low = vm & -vm
            vm ^= low
            out[n - low.bit_length()] |= bit
    return tuple(out)


def canonical_form(lists: ListAssignment) -> ListAssignment:
    """Orbit-unique representative of ``lists`` under color bijections."""
    masks = _canonical_masks(lists.masks(), len(lists))
    return ListAssignment(tuple(ColorSet(m) for m in masks))


def _estimate_states(half_sizes: Sequence[int], constraint: ListConstraint) -> int:
    """Upper bound on the enumeration's leaf count (loose but cheap)."""
    copy_target = None
    if constraint.kind == "equal":
        copy_target = max(constraint.u, constraint.v)
    total = 1
    m = 0
    for i, h in enumerate(half_sizes):
        if i == copy_target:
            continue
        total *= sum(comb(m, j) for j in range(h + 1))
        m += h
    return total


def _iter_foc_masks(
    half_sizes: Sequence[int], constraint: ListConstraint
) -> Iterator[tuple[int, ...]]:
    """All assignments whose first color occurrences are 1, 2, 3, ... in
    vertex order (a superset containing every canonical form exactly once)."""
    n = len(half_sizes)
    copy_source = copy_target = None
    filter_at = None
    if constraint.kind == "equal":
        copy_source = min(constraint.u, constraint.v)
        copy_target = max(constraint.u, constraint.v)
    elif constraint.kind == "max_intersection":
        filter_at = max(constraint.u, constraint.v)
    masks: list[int] = [0] * n

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(masks)
            return
        h = half_sizes[i]
        if i == copy_target:
            if masks[copy_source].bit_count() != h:
                return
            masks[i] = masks[copy_source]
            yield from rec(i + 1, used)
            masks[i] = 0
            return
        options: list[tuple[int, int]] = []
        for j in range(min(h, used), -1, -1):
            newc = h - j
            new_mask = ((1 << newc) - 1) << used
            if j == 0:
                options.append((new_mask, used + newc))
            else:
                for combo in combinations(range(used), j):
                    old = 0
                    for bit in combo:
                        old |= 1 << bit
                    options.append((old | new_mask, used + newc))
        options.sort()
        other = None
        if filter_at == i:
            other = masks[min(constraint.u, constraint.v)]
        for mask, used2 in options:
            if other is not None and (mask & other).bit_count() > constraint.k:
                continue
            masks[i] = mask
            yield from rec(i + 1, used2)
        masks[i] = 0

    yield from rec(0, 0)


def _iter_canonical_masks(
    gadget: Gadget,
    constraint: ListConstraint,
    max_states: int | None,
) -> Iterator[tuple[int, ...]]:
    half = gadget.half_sizes()
    universe = sum(half)
    if universe > ENUMERATION_UNIVERSE_BOUND:
        raise CapacityError(
            f"half-list universe needs {universe} colors, over the"
            f" {ENUMERATION_UNIVERSE_BOUND}-color enumeration bound; use"
            " sampled verification"
        )
    if max_states is not None:
        estimate = _estimate_states(half, constraint)
        if estimate > max_states:
            raise CapacityError(
                f"enumeration state estimate {estimate:.2e} exceeds cap"
                f" {max_states:.0e}; use sampled verification"
            )
    n = gadget.graph.n
    for masks in _iter_foc_masks(half, constraint):
        if _canonical_masks(masks, n) == masks:
            yield masks


def enumerate_half_lists(
    gadget: Gadget,
    constraint: ListConstraint | None = None,
    max_states: int | None = DEFAULT_MAX_STATES,
) -> Iterator[ListAssignment]:
    """Yield one representative per color-bijection orbit of the
    constraint-satisfying half-list assignments, in canonical form."""
    constraint = constraint or ListConstraint.unconstrained()
    for masks in _iter_canonical_masks(gadget, constraint, max_states):
        yield ListAssignment(tuple(ColorSet(m) for m in masks))


@dataclass
class ChoosabilityStats:
    """Counters for an enumeration or sampling run."""

    mode: str  # "exhaustive" | "sampled"
    checked: int = 0
    violations: int = 0
    branch_histogram: dict = field(default_factory=dict)
    solver_calls: int = 0
    max_solver_nodes: int = 0
    total_solver_nodes: int = 0
    wall_time: float = 0.0
    counterexample: ListAssignment | None = None

    def note_solve(self, result: SolveResult) -> None:
        self.solver_calls += 1
        self.total_solver_nodes += result.nodes_explored
        if result.nodes_explored > self.max_solver_nodes:
            self.max_solver_nodes = result.nodes_explored

    def bump_branch(self, branch: str) -> None:
        self.branch_histogram[branch] = self.branch_histogram.get(branch, 0) + 1

    def to_dict(self, graph: Graph | None = None) -> dict:
        key = "orbits_checked" if self.mode == "exhaustive" else "samples_checked"
        doc = {
            key: self.checked,
            "violations": self.violations,
            "branch_histogram": dict(self.branch_histogram),
            "solver_calls": self.solver_calls,
            "max_solver_nodes": self.max_solver_nodes,
            "total_solver_nodes": self.total_solver_nodes,
            "wall_time": round(self.wall_time, 6),
        }
        if self.counterexample is not None:
            if graph is not None:
                doc["counterexample"] = self.counterexample.to_dict(graph)
            else:
                doc["counterexample"] = [list(cs) for cs in self.counterexample]
        return doc


def verify_universal_colorability(
    gadget: Gadget,
    constraint: ListConstraint | None = None,
    b: int = 1,
    max_states: int | None = DEFAULT_MAX_STATES,
    deadline: float | None = None,
) -> tuple[bool, ChoosabilityStats]:
    """Exhaustively check that the gadget's graph is (L:b)-colorable for
    every constraint-satisfying half-list assignment L."""
    constraint = constraint or ListConstraint.unconstrained()
    stats = ChoosabilityStats(mode="exhaustive")
    t0 = time.perf_counter()
    graph = gadget.graph
    for masks in _iter_canonical_masks(gadget, constraint, max_states):
        stats.checked += 1
        lists = ListAssignment(tuple(ColorSet(m) for m in masks))
        result = find_coloring(graph, lists, b, deadline=deadline)
        stats.note_solve(result)
        if result.status == "UNSAT":
            stats.violations += 1
            stats.counterexample = lists
            stats.wall_time = time.perf_counter() - t0
            return False, stats
    stats.wall_time = time.perf_counter() - t0
    return True, stats


def find_colorability_counterexample(
    gadget: Gadget,
    constraint: ListConstraint | None = None,
    b: int = 1,
    max_orbits: int = 5_000_000,
    deadline: float | None = None,
) -> tuple[ListAssignment | None, ChoosabilityStats]:
    """Stream the (possibly huge) enumeration until an uncolorable half-list
    assignment appears; None if ``max_orbits`` orbits were all colorable."""
    constraint = constraint or ListConstraint.unconstrained()
    stats = ChoosabilityStats(mode="exhaustive")
    t0 = time.perf_counter()
    graph = gadget.graph
    for masks in _iter_canonical_masks(gadget, constraint, max_states=None):
        stats.checked += 1
        lists = ListAssignment(tuple(ColorSet(m) for m in masks))
        result = find_coloring(graph, lists, b, deadline=deadline)
        stats.note_solve(result)
        if result.status == "UNSAT":
            stats.violations += 1
            stats.counterexample = lists
            stats.wall_time = time.perf_counter() - t0
            return lists, stats
        if stats.checked >= max_orbits:
            break
    stats.wall_time = time.perf_counter() - t0
    return None, stats


@dataclass(frozen=True)
class RelaxedVerdict:
    """Outcome of the pinned-extension check for one half-list assignment.

    When the property holds, ``branch`` names the witnessing condition and
    ``witness_psi0`` the pinning coloring; otherwise a counterexample carries
    the half-list assignment together with a proper pinned extension that
    does not complete to a full coloring (or ``None`` when no proper pinning
    exists at all).
    """

    holds: bool
    branch: str  # "i" | "ii" | "neither"
    witness_psi0: SetColoring | None = None
    counterexample: tuple[ListAssignment, SetColoring | None] | None = None


def _partial_from(n: int, pinned: dict[int, int]) -> SetColoring:
    assignment: list[ColorSet | None] = [None] * n
    for v, c in pinned.items():
        assignment[v] = ColorSet.of(c)
    return SetColoring(tuple(assignment), 1)


def _proper_assignments(
    graph: Graph,
    lists: ListAssignment,
    vertices: Sequence[int],
    pinned: dict[int, int],
) -> Iterator[dict[int, int]]:
    """Proper list-respecting single-color assignments on ``vertices``
    extending ``pinned`` (properness on the induced subgraph only)."""
    out = dict(pinned)

    def rec(i: int) -> Iterator[dict[int, int]]:
        if i == len(vertices):
            yield dict(out)
            return
        v = vertices[i]
        for c in lists[v]:
            if any(out.get(u) == c for u in graph.adj[v]):
                continue
            out[v] = c
            yield from rec(i + 1)
            del out[v]

    yield from rec(0)


def _blocking_extension(
    graph: Graph,
    lists: ListAssignment,
    pinned: dict[int, int],
    free: Sequence[int],
    stats: ChoosabilityStats,
    deadline: float | None,
) -> dict[int, int] | None:
    """First proper extension of ``pinned`` over ``free`` that does not
    complete to a full coloring, or None if every extension completes."""
    for ext in _proper_assignments(graph, lists, free, pinned):
        result = find_coloring(
            graph, lists, 1, partial=_partial_from(graph.n, ext), deadline=deadline
        )
        stats.note_solve(result)
        if result.status == "UNSAT":
            return ext
    return None


def check_relaxed_at(
    gadget: Gadget,
    half_lists: ListAssignment,
    stats: ChoosabilityStats | None = None,
    deadline: float | None = None,
) -> RelaxedVerdict:
    """Check the pinned-extension property for one half-list assignment.

    Condition (i): some proper pair of colors on {v1, v3} (equal colors
    allowed when they are nonadjacent) is such that every proper
    list-respecting extension to S ∪ {v1, v3} completes to a full coloring.
    Condition (ii): the lists of v1 and v3 coincide and some proper coloring
    of S has the same universal-extension property.  Conditions are checked
    in that order and the first that holds is reported.
    """
    if not half_list_valid(gadget, half_lists):
        raise ValueError("not a half-list assignment for this gadget")
    if stats is None:
        stats = ChoosabilityStats(mode="sampled")
    graph = gadget.graph
    n = graph.n
    v1, v3 = gadget.v1, gadget.v3
    s_vertices = tuple(sorted(gadget.s_set))
    first_block: dict[int, int] | None = None

    for psi0 in _proper_assignments(graph, half_lists, (v1, v3), {}):
        block = _blocking_extension(
            graph, half_lists, psi0, s_vertices, stats, deadline
        )
        if block is None:
            return RelaxedVerdict(True, "i", _partial_from(n, psi0))
        if first_block is None:
            first_block = block

    if half_lists[v1] == half_lists[v3]:
        for psi0 in _proper_assignments(graph, half_lists, s_vertices, {}):
            block = _blocking_extension(
                graph, half_lists, psi0, (v1, v3), stats, deadline
            )
            if block is None:
                return RelaxedVerdict(True, "ii", _partial_from(n, psi0))
            if first_block is None:
                first_block = block

    blocked = _partial_from(n, first_block) if first_block is not None else None
    return RelaxedVerdict(False, "neither", None, (half_lists, blocked))


def sample_half_lists(
    gadget: Gadget,
    count: int,
    seed: int,
    constraint: ListConstraint | None = None,
) -> Iterator[ListAssignment]:
    """``count`` pseudo-random half-list assignments over ``{1..U}`` with
    ``U`` the sum of half sizes.  Sample ``i`` depends only on ``(seed, i)``,
    so runs are reproducible under any parallel schedule."""
    half = gadget.half_sizes()
    universe = sum(half)
    if universe > MAX_COLOR:
        raise StructuralError(
            f"sampling universe needs {universe} colors, over cap {MAX_COLOR}"
        )
    population = range(1, universe + 1)
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        while True:
            masks = []
            for h in half:
                mask = 0
                for c in rng.sample(population, h):
                    mask |= 1 << (c - 1)
                masks.append(mask)
            if constraint is not None:
                if constraint.kind == "equal":
                    masks[max(constraint.u, constraint.v)] = masks[
                        min(constraint.u, constraint.v)
                    ]
                if not constraint.check_masks(masks):
                    continue
            break
        yield ListAssignment(tuple(ColorSet(m) for m in masks))


def structured_half_lists(gadget: Gadget) -> list[ListAssignment]:
    """Two deterministic half-list assignments used as mandatory sample
    cases: (A) every vertex takes the smallest half of its base list (so all
    equal base lists get equal half-lists), (B) the same except v1 takes the
    largest half (breaking that equality)."""

    def low_half(mask: int, h: int) -> int:
        out = 0
        for _ in range(h):
            low = mask & -mask
            out |= low
            mask ^= low
        return out

    def high_half(mask: int, h: int) -> int:
        out = 0
        for _ in range(h):
            high = 1 << (mask.bit_length() - 1)
            out |= high
            mask ^= high
        return out

    half = gadget.half_sizes()
    base = gadget.base_lists.masks()
    a = [low_half(m, h) for m, h in zip(base, half)]
    b = list(a)
    b[gadget.v1] = high_half(base[gadget.v1], half[gadget.v1])
    return [
        ListAssignment(tuple(ColorSet(m) for m in a)),
        ListAssignment(tuple(ColorSet(m) for m in b)),
    ]


def verify_relaxed(
    gadget: Gadget,
    mode: str = "sampled",
    samples: int = 2000,
    seed: int = 42,
    max_states: int | None = DEFAULT_MAX_STATES,
    deadline: float | None = None,
) -> tuple[bool, ChoosabilityStats]:
    """Check the pinned-extension property over half-list assignments.

    ``mode="exhaustive"`` walks the canonical enumeration (capacity guarded);
    ``mode="sampled"`` checks the two structured cases plus ``samples``
    pseudo-random assignments drawn from ``seed``.
    """
    stats = ChoosabilityStats(mode="exhaustive" if mode == "exhaustive" else "sampled")
    t0 = time.perf_counter()

    if mode == "exhaustive":
        candidates: Iterator[ListAssignment] = enumerate_half_lists(
            gadget, None, max_states
        )
    elif mode == "sampled":
        def gen() -> Iterator[ListAssignment]:
            yield from structured_half_lists(gadget)
            yield from sample_half_lists(gadget, samples, seed)

        candidates = gen()
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for lists in candidates:
        stats.checked += 1
        verdict = check_relaxed_at(gadget, lists, stats, deadline)
        stats.bump_branch(verdict.branch)
        if not verdict.holds:
            stats.violations += 1
            stats.counterexample = lists
            stats.wall_time = time.perf_counter() - t0
            return False, stats
    stats.wall_time = time.perf_counter() - t0
    return True, stats
