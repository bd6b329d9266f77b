import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from setchoose.choosability import (
    CapacityError,
    ListConstraint,
    canonical_form,
    check_relaxed_at,
    enumerate_half_lists,
    find_colorability_counterexample,
    sample_half_lists,
    structured_half_lists,
    verify_relaxed,
    verify_universal_colorability,
)
from setchoose.gadgets import build
from setchoose.model import (
    ColorSet,
    Gadget,
    Graph,
    ListAssignment,
    half_list_valid,
)
from setchoose.solver import find_coloring


def toy_gadget(labels, edges, list_sizes, v1, v3, s=()):
    """Gadget with base lists {1..2h} per vertex (only sizes matter for
    half-list quantification)."""
    graph = Graph.build(labels, edges)
    lists = ListAssignment(
        tuple(ColorSet.span(1, 2 * list_sizes[lab]) for lab in labels)
    )
    return Gadget.build(graph, lists, v1, v3, s)


def naive_orbits(gadget, constraint=None):
    """Canonicalize every assignment over the bounded universe."""
    half = gadget.half_sizes()
    universe = sum(half)
    n = gadget.graph.n
    seen = set()
    per_vertex = [
        [
            ColorSet.from_iterable(c).mask
            for c in itertools.combinations(range(1, universe + 1), h)
        ]
        for h in half
    ]
    for masks in itertools.product(*per_vertex):
        if constraint is not None and not constraint.check_masks(masks):
            continue
        canon = canonical_form(ListAssignment(tuple(ColorSet(m) for m in masks)))
        seen.add(canon.masks())
    return seen


class TestCanonicalForm:
    def test_already_canonical_is_fixed(self):
        lists = ListAssignment((ColorSet.of(1, 2), ColorSet.of(1, 3)))
        assert canonical_form(lists) == lists

    def test_shared_color_gets_smallest_index(self):
        # ({1,2},{2,3}) and ({1,2},{1,3}) are one orbit; the representative
        # assigns index 1 to the color with the fullest incidence
        lists = ListAssignment((ColorSet.of(1, 2), ColorSet.of(2, 3)))
        assert canonical_form(lists).masks() == (
            ColorSet.of(1, 2).mask,
            ColorSet.of(1, 3).mask,
        )

    def test_renames_by_first_occurrence(self):
        lists = ListAssignment((ColorSet.of(5, 9), ColorSet.of(9, 40)))
        canon = canonical_form(lists)
        assert canon.masks() == (ColorSet.of(1, 2).mask, ColorSet.of(1, 3).mask)

    def test_bijection_invariance_random(self):
        rng = random.Random(99)
        for _ in range(300):
            n = rng.randint(1, 4)
            sizes = [rng.randint(1, 2) for _ in range(n)]
            universe = list(range(1, 9))
            lists = ListAssignment(
                tuple(
                    ColorSet.from_iterable(rng.sample(universe, h)) for h in sizes
                )
            )
            perm = universe[:]
            rng.shuffle(perm)
            pi = {c: perm[c - 1] for c in universe}
            mapped = ListAssignment(
                tuple(ColorSet.from_iterable(pi[c] for c in cs) for cs in lists)
            )
            assert canonical_form(mapped) == canonical_form(lists)

    @settings(max_examples=200)
    @given(st.data())
    def test_bijection_invariance_hypothesis(self, data):
        n = data.draw(st.integers(1, 4))
        lists = ListAssignment(
            tuple(
                ColorSet.from_iterable(
                    data.draw(st.sets(st.integers(1, 8), min_size=1, max_size=2))
                )
                for _ in range(n)
            )
        )
        perm = data.draw(st.permutations(range(1, 9)))
        pi = {c: perm[c - 1] for c in range(1, 9)}
        mapped = ListAssignment(
            tuple(ColorSet.from_iterable(pi[c] for c in cs) for cs in lists)
        )
        assert canonical_form(mapped) == canonical_form(lists)

    def test_first_occurrences_are_consecutive(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 5)
            lists = ListAssignment(
                tuple(
                    ColorSet.from_iterable(rng.sample(range(1, 13), rng.randint(1, 3)))
                    for _ in range(n)
                )
            )
            canon = canonical_form(lists)
            seen = 0
            for cs in canon:
                for c in sorted(cs):
                    if c > seen:
                        assert c == seen + 1
                        seen = c


class TestEnumeration:
    def test_first_vertex_always_canonicalizes_to_prefix(self):
        # every orbit gives the leading size-2 vertex the half-list {1,2},
        # so a lone vertex has exactly one orbit
        graph = Graph.build(("v", "w"), [])
        lists = ListAssignment.uniform(2, ColorSet.span(1, 4))
        gadget = Gadget.build(graph, lists, "v", "w")
        firsts = {o[0].mask for o in enumerate_half_lists(gadget)}
        assert firsts == {ColorSet.of(1, 2).mask}

    def test_single_orbit_for_lone_pair(self):
        graph = Graph.build(("a", "b"), [("a", "b")])
        lists = ListAssignment.uniform(2, ColorSet.span(1, 4))
        gadget = Gadget.build(graph, lists, "a", "b")
        orbits = list(enumerate_half_lists(gadget))
        # a "first" vertex always canonicalizes to {1,2}; b overlaps in
        # 0, 1 or 2 colors
        assert len(orbits) == 3
        for o in orbits:
            assert half_list_valid(gadget, o)

    def test_equal_constraint_collapses_pairs(self):
        graph = Graph.build(("a", "b"), [])
        lists = ListAssignment.uniform(2, ColorSet.span(1, 4))
        gadget = Gadget.build(graph, lists, "a", "b")
        constraint = ListConstraint.equal(0, 1)
        orbits = list(enumerate_half_lists(gadget, constraint))
        assert [o.masks() for o in orbits] == [
            (ColorSet.of(1, 2).mask, ColorSet.of(1, 2).mask)
        ]

    def test_stream_is_canonical_and_duplicate_free(self):
        pentagon = build("pentagon")
        seen = set()
        for lists in enumerate_half_lists(pentagon):
            assert half_list_valid(pentagon, lists)
            assert canonical_form(lists) == lists
            key = lists.masks()
            assert key not in seen
            seen.add(key)
        assert len(seen) > 100

    @pytest.mark.parametrize(
        "labels,edges,sizes,constraint",
        [
            (("a", "b", "c"), [("a", "b"), ("b", "c")], {"a": 2, "b": 1, "c": 2}, None),
            (("a", "b", "c"), [("a", "b")], {"a": 1, "b": 2, "c": 1}, None),
            (
                ("a", "b", "c", "d"),
                [("a", "b"), ("c", "d")],
                {"a": 2, "b": 2, "c": 1, "d": 2},
                ListConstraint.max_intersection(0, 2, 0),
            ),
            (
                ("a", "b", "c", "d"),
                [("a", "c")],
                {"a": 2, "b": 2, "c": 2, "d": 1},
                ListConstraint.equal(0, 2),
            ),
        ],
    )
    def test_orbit_completeness_matches_naive(self, labels, edges, sizes, constraint):
        gadget = toy_gadget(labels, edges, sizes, labels[0], labels[-1])
        expected = naive_orbits(gadget, constraint)
        got = {lists.masks() for lists in enumerate_half_lists(gadget, constraint)}
        assert got == expected

    def test_capacity_error_on_g2(self):
        g2 = build("g2")
        with pytest.raises(CapacityError):
            next(iter(enumerate_half_lists(g2)))

    def test_capacity_error_on_g3_universe(self):
        g3 = build("g3")
        assert sum(g3.half_sizes()) == 65
        with pytest.raises(CapacityError):
            next(iter(enumerate_half_lists(g3, max_states=None)))

    def test_relaxed_exhaustive_capacity_error_on_g4(self):
        g4 = build("g4")
        with pytest.raises(CapacityError):
            verify_relaxed(g4, "exhaustive")


class TestUniversalColorability:
    def test_pentagon_with_intersection_bound_holds(self):
        pentagon = build("pentagon")
        ok, stats = verify_universal_colorability(
            pentagon, ListConstraint.max_intersection(pentagon.v1, pentagon.v3, 1)
        )
        assert ok
        assert stats.violations == 0
        assert stats.checked > 0

    def test_pentagon_unconstrained_fails_with_counterexample(self):
        pentagon = build("pentagon")
        ok, stats = verify_universal_colorability(pentagon)
        assert not ok
        bad = stats.counterexample
        assert bad is not None
        assert half_list_valid(pentagon, bad)
        assert find_coloring(pentagon.graph, bad, 1).status == "UNSAT"

    def test_counterexample_streaming_matches(self):
        pentagon = build("pentagon")
        lists, stats = find_colorability_counterexample(pentagon)
        assert lists is not None
        assert find_coloring(pentagon.graph, lists, 1).status == "UNSAT"

    def test_verdict_invariant_under_base_list_renaming(self):
        # the enumeration depends only on half sizes, so renaming base lists
        # must not change the verdict
        pentagon = build("pentagon")
        renamed = Gadget(
            pentagon.graph,
            ListAssignment(
                tuple(
                    ColorSet.from_iterable(c + 20 for c in cs)
                    for cs in pentagon.base_lists
                )
            ),
            pentagon.v1,
            pentagon.v3,
            pentagon.s_set,
        )
        constraint = ListConstraint.max_intersection(pentagon.v1, pentagon.v3, 1)
        ok1, stats1 = verify_universal_colorability(pentagon, constraint)
        ok2, stats2 = verify_universal_colorability(renamed, constraint)
        assert ok1 == ok2
        assert stats1.checked == stats2.checked


class TestCheckRelaxedAt:
    def test_single_edge_gadget_trivially_relaxed(self):
        graph = Graph.build(("v1", "v3"), [("v1", "v3")])
        lists = ListAssignment.uniform(2, ColorSet.span(1, 4))
        gadget = Gadget.build(graph, lists, "v1", "v3")
        half = ListAssignment.uniform(2, ColorSet.of(1, 2))
        verdict = check_relaxed_at(gadget, half)
        assert verdict.holds and verdict.branch == "i"
        psi0 = verdict.witness_psi0
        c1 = psi0[0]
        c3 = psi0[1]
        assert c1 is not None and c3 is not None and c1 != c3

    def test_rejects_non_half_lists(self):
        pentagon = build("pentagon")
        with pytest.raises(ValueError):
            check_relaxed_at(pentagon, pentagon.base_lists)

    def test_g2_spec_instance_holds(self):
        g2 = build("g2")
        table = {lab: (1, 2, 3) for lab in ("v1", "u2", "v3", "u4", "u5")}
        table.update({"y1": (1, 2, 3, 4), "y2": (1, 2, 7), "y3": (1, 2), "y4": (1, 2, 7)})
        half = ListAssignment.from_dict(g2.graph, table)
        verdict = check_relaxed_at(g2, half)
        assert verdict.holds
        assert verdict.branch in ("i", "ii")

    def test_g2_unequal_cycle_lists_holds_branch_i(self):
        g2 = build("g2")
        table = {lab: (1, 2, 3) for lab in ("u2", "v3", "u4", "u5")}
        table["v1"] = (4, 5, 6)
        table.update({"y1": (1, 2, 3, 4), "y2": (1, 2, 7), "y3": (1, 2), "y4": (1, 2, 7)})
        half = ListAssignment.from_dict(g2.graph, table)
        verdict = check_relaxed_at(g2, half)
        assert verdict.holds
        assert verdict.branch == "i"

    def test_non_relaxed_toy_gadget_detected(self):
        # path v1 - a - v3 with singleton half-lists all {1}: the middle
        # vertex can never be colored once the ends are pinned
        graph = Graph.build(("v1", "a", "v3"), [("v1", "a"), ("a", "v3")])
        lists = ListAssignment.uniform(3, ColorSet.of(1, 2))
        gadget = Gadget.build(graph, lists, "v1", "v3")
        half = ListAssignment.uniform(3, ColorSet.of(1))
        verdict = check_relaxed_at(gadget, half)
        assert not verdict.holds
        assert verdict.branch == "neither"
        bad_lists, blocked = verdict.counterexample
        assert bad_lists == half
        assert blocked is not None
        # the counterexample re-validates: pinning it yields UNSAT
        res = find_coloring(graph, half, 1, partial=blocked)
        assert res.status == "UNSAT"

    def test_unequal_designated_lists_report_neither(self):
        # (ii) is blocked by L(v1) != L(v3) and (i) fails: middle vertex
        # shares its only color with both pinnable choices
        graph = Graph.build(("v1", "a", "v3"), [("v1", "a"), ("a", "v3")])
        lists = ListAssignment.uniform(3, ColorSet.span(1, 4))
        gadget = Gadget.build(graph, lists, "v1", "v3")
        half = ListAssignment(
            (ColorSet.of(1, 2), ColorSet.of(1, 2), ColorSet.of(1, 3))
        )
        verdict = check_relaxed_at(gadget, half)
        if not verdict.holds:
            assert verdict.branch == "neither"


class TestSampling:
    def test_samples_are_half_lists_and_reproducible(self):
        g2 = build("g2")
        first = list(sample_half_lists(g2, 5, seed=42))
        second = list(sample_half_lists(g2, 5, seed=42))
        assert first == second
        for lists in first:
            assert half_list_valid(g2, lists)

    def test_sample_i_is_pure_function_of_seed_and_index(self):
        g2 = build("g2")
        ten = list(sample_half_lists(g2, 10, seed=7))
        # drawing only the prefix yields the same assignments
        three = list(sample_half_lists(g2, 3, seed=7))
        assert ten[:3] == three

    def test_seed_changes_samples(self):
        g2 = build("g2")
        assert list(sample_half_lists(g2, 3, seed=1)) != list(
            sample_half_lists(g2, 3, seed=2)
        )

    def test_equal_constraint_repair(self):
        g1 = build("g1")
        constraint = ListConstraint.equal(g1.v1, g1.v3)
        for lists in sample_half_lists(g1, 10, seed=5, constraint=constraint):
            assert lists[g1.v1] == lists[g1.v3]
            assert half_list_valid(g1, lists)

    def test_structured_cases_cover_equal_and_unequal_cycles(self):
        g2 = build("g2")
        equal_case, unequal_case = structured_half_lists(g2)
        cycle = [g2.graph.vertex(lab) for lab in ("v1", "u2", "v3", "u4", "u5")]
        assert len({equal_case[v].mask for v in cycle}) == 1
        assert len({unequal_case[v].mask for v in cycle}) == 2
        assert half_list_valid(g2, equal_case)
        assert half_list_valid(g2, unequal_case)


class TestVerifyRelaxed:
    def test_g2_sampled_smoke(self):
        g2 = build("g2")
        ok, stats = verify_relaxed(g2, "sampled", samples=25, seed=42)
        assert ok
        assert stats.checked == 27  # 2 structured + 25 random
        assert stats.violations == 0
        doc = stats.to_dict(g2.graph)
        assert doc["samples_checked"] == 27
        assert set(doc["branch_histogram"]) <= {"i", "ii", "neither"}

    def test_exhaustive_mode_on_tiny_gadget(self):
        graph = Graph.build(("v1", "a", "v3"), [("v1", "a"), ("a", "v3")])
        lists = ListAssignment.uniform(3, ColorSet.of(1, 2))
        gadget = Gadget.build(graph, lists, "v1", "v3")
        ok, stats = verify_relaxed(gadget, "exhaustive")
        assert not ok  # the all-{1} assignment is a genuine violation
        assert stats.counterexample is not None

    def test_broken_g2_negative_control_recorded_verdict(self):
        # negative control: y1y2 edge removed and y2's base list shrunk; the
        # checker's verdict on a deterministic sample set is frozen here
        g2 = build("g2")
        labels = g2.graph.labels
        edges = [
            (labels[u], labels[v])
            for u, v in g2.graph.edge_list
            if {labels[u], labels[v]} != {"y1", "y2"}
        ]
        graph = Graph.build(labels, edges)
        table = g2.base_lists.to_dict(g2.graph)
        table["y2"] = [1, 2]
        broken = Gadget.build(
            graph, ListAssignment.from_dict(graph, table), "v1", "v3", ("y4",)
        )
        ok, stats = verify_relaxed(broken, "sampled", samples=400, seed=42)
        assert not ok
        bad = stats.counterexample
        assert bad is not None
        verdict = check_relaxed_at(broken, bad)
        assert not verdict.holds
