"""Claim-level verification: one report per checkable statement.

Exact claims (UNSAT proofs, forced values, exhaustive enumerations) report
``verified``; statistical claims report ``sampled-pass``.  A failed check
reports ``refuted`` and always carries a re-checkable counterexample
artifact.  A claim that exceeds its time budget reports ``skipped`` - never
``verified``.  Unexpected exceptions surface as ``error``.
"""

from __future__ import annotations

import itertools
import json
import hashlib
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .choosability import (
    CapacityError,
    ChoosabilityStats,
    ListConstraint,
    find_colorability_counterexample,
    sample_half_lists,
    verify_relaxed,
    verify_universal_colorability,
)
from .formats import lists_to_json, to_edgelist
from .gadgets import FinalConstruction, apex_fanout, build, build_final, psi_key
from .model import (
    ColorSet,
    Gadget,
    Graph,
    ListAssignment,
    SetColoring,
    is_proper,
    respects_lists,
)
from .solver import (
    DomainConstraint,
    SolverTimeout,
    count_colorings,
    find_coloring,
)

__all__ = [
    "ClaimReport",
    "DEFAULT_SEED",
    "DEFAULT_TIMEOUTS",
    "verify_lemma1",
    "verify_corollary2",
    "verify_lemma3",
    "verify_lemma4",
    "verify_lemma5",
    "verify_lemma_main",
    "verify_theorem",
    "run_all",
    "emit_report",
    "exit_code",
    "lemma1_negative_control",
    "corollary2_negative_control",
    "pentagon_color_class_bound",
    "thread_count",
]

DEFAULT_SEED = 42

THREADS_ENV_VAR = "SETCHOOSE_THREADS"

#: Generous per-claim wall-clock budgets (seconds); override via ``timeout``.
DEFAULT_TIMEOUTS: dict[str, float] = {
    "lemma1.unsat": 10,
    "lemma1.universal": 600,
    "cor2.unsat": 60,
    "cor2.forced": 60,
    "cor2.universal": 7200,
    "cor2.negative_control": 600,
    "lemma1.negative_control": 60,
    "lemma3.forced": 60,
    "lemma3.relaxed": 3600,
    "lemma4.forced": 300,
    "lemma4.relaxed": 3600,
    "lemma5.forced": 1200,
    "lemma5.relaxed": 3600,
    "lemma6.unsat.direct": 1800,
    "lemma6.unsat.staged": 60,
    "lemma6.halflists": 3600,
    "theorem.audit": 300,
    "theorem.reduction": 300,
    "theorem.choosability": 1800,
}


@dataclass
class ClaimReport:
    claim_id: str
    status: str  # verified | refuted | sampled-pass | skipped | error
    statistics: dict = field(default_factory=dict)
    duration: float = 0.0
    artifacts: dict | None = None

    def to_dict(self) -> dict:
        doc = {
            "claim_id": self.claim_id,
            "status": self.status,
            "statistics": self.statistics,
            "duration_s": round(self.duration, 3),
        }
        if self.artifacts is not None:
            doc["artifacts"] = self.artifacts
        return doc


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _deadline_for(claim_id: str, timeout: float | None) -> float | None:
    budget = timeout if timeout is not None else DEFAULT_TIMEOUTS.get(claim_id)
    return None if budget is None else time.monotonic() + budget


def _claim(claim_id: str, timeout: float | None, body) -> ClaimReport:
    """Run ``body(deadline)`` and wrap its (status, stats, artifacts)."""
    deadline = _deadline_for(claim_id, timeout)
    t0 = time.perf_counter()
    try:
        status, stats, artifacts = body(deadline)
    except SolverTimeout as exc:
        return ClaimReport(
            claim_id, "skipped", {"reason": str(exc)}, time.perf_counter() - t0
        )
    except CapacityError as exc:
        return ClaimReport(
            claim_id, "error", {"reason": str(exc)}, time.perf_counter() - t0
        )
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        return ClaimReport(
            claim_id,
            "error",
            {"reason": f"{type(exc).__name__}: {exc}"},
            time.perf_counter() - t0,
        )
    return ClaimReport(claim_id, status, stats, time.perf_counter() - t0, artifacts)


# ---------------------------------------------------------------------------
# pentagon


def pentagon_color_class_bound(gadget: Gadget | None = None) -> tuple[int, int]:
    """Counting argument for the pentagon: summing, per color, the largest
    independent set of vertices whose base list holds that color, against the
    2*n color slots a 2-set coloring must fill."""
    gadget = gadget or build("pentagon")
    graph = gadget.graph
    total = 0
    all_colors = ColorSet(0)
    for cs in gadget.base_lists:
        all_colors = all_colors | cs
    for c in all_colors:
        eligible = [v for v in range(graph.n) if c in gadget.base_lists[v]]
        best = 0
        for r in range(len(eligible), 0, -1):
            for subset in itertools.combinations(eligible, r):
                if all(
                    not graph.has_edge(u, v)
                    for u, v in itertools.combinations(subset, 2)
                ):
                    best = r
                    break
            if best:
                break
        total += best
    return total, 2 * graph.n


def verify_lemma1(timeout: float | None = None) -> list[ClaimReport]:
    gadget = build("pentagon")

    def unsat(deadline):
        res = find_coloring(gadget.graph, gadget.base_lists, 2, deadline=deadline)
        count = count_colorings(gadget.graph, gadget.base_lists, 2, deadline=deadline)
        bound, needed = pentagon_color_class_bound(gadget)
        stats = {
            "solver": res.to_dict(),
            "coloring_count": count,
            "color_class_bound": bound,
            "color_slots_needed": needed,
        }
        ok = res.status == "UNSAT" and count == 0 and bound < needed
        if not ok and res.witness is not None:
            return "refuted", stats, {"witness": res.witness.to_dict(gadget.graph)}
        return ("verified" if ok else "refuted"), stats, None

    def universal(deadline):
        constraint = ListConstraint.max_intersection(gadget.v1, gadget.v3, 1)
        ok, stats = verify_universal_colorability(
            gadget, constraint, b=1, deadline=deadline
        )
        artifacts = None
        if not ok:
            artifacts = {"counterexample": stats.counterexample.to_dict(gadget.graph)}
        return ("verified" if ok else "refuted"), stats.to_dict(gadget.graph), artifacts

    return [
        _claim("lemma1.unsat", timeout, unsat),
        _claim("lemma1.universal", timeout, universal),
    ]


def lemma1_negative_control(timeout: float | None = None) -> ClaimReport:
    """Mutated pentagon (one base list altered) whose 2-set instance is
    satisfiable: demonstrates the UNSAT check can fail, with a witness."""
    good = build("pentagon")
    table = good.base_lists.to_dict(good.graph)
    table["v5"] = [2, 4, 5, 7]
    lists = ListAssignment.from_dict(good.graph, table)

    def body(deadline):
        res = find_coloring(good.graph, lists, 2, deadline=deadline)
        if res.status == "SAT":
            assert res.witness is not None
            return (
                "refuted",
                {"solver": res.to_dict()},
                {"witness": res.witness.to_dict(good.graph)},
            )
        return "verified", {"solver": res.to_dict()}, None

    return _claim("lemma1.negative_control", timeout, body)


# ---------------------------------------------------------------------------
# corollary 2


def verify_corollary2(timeout: float | None = None) -> list[ClaimReport]:
    gadget = build("g1")
    graph = gadget.graph

    def unsat(deadline):
        res = find_coloring(graph, gadget.base_lists, 2, deadline=deadline)
        ok = res.status == "UNSAT"
        arts = None
        if not ok and res.witness is not None:
            arts = {"witness": res.witness.to_dict(graph)}
        return ("verified" if ok else "refuted"), {"solver": res.to_dict()}, arts

    def forced(deadline):
        y = graph.vertex("y")
        x = graph.vertex("x")
        not_y12 = DomainConstraint.none().forbid(y, (1, 2))
        not_x34 = DomainConstraint.none().forbid(x, (3, 4))
        ok_y = (
            find_coloring(graph, gadget.base_lists, 2, not_y12, deadline=deadline).status
            == "UNSAT"
        )
        ok_x = (
            find_coloring(graph, gadget.base_lists, 2, not_x34, deadline=deadline).status
            == "UNSAT"
        )
        stats = {"y_forced_to_{1,2}": ok_y, "x_forced_to_{3,4}": ok_x}
        return ("verified" if ok_y and ok_x else "refuted"), stats, None

    def universal(deadline):
        constraint = ListConstraint.equal(gadget.v1, gadget.v3)
        ok, stats = verify_universal_colorability(
            gadget, constraint, b=1, deadline=deadline
        )
        arts = None
        if not ok:
            arts = {"counterexample": stats.counterexample.to_dict(graph)}
        return ("verified" if ok else "refuted"), stats.to_dict(graph), arts

    return [
        _claim("cor2.unsat", timeout, unsat),
        _claim("cor2.forced", timeout, forced),
        _claim("cor2.universal", timeout, universal),
    ]


def corollary2_negative_control(
    timeout: float | None = None, max_orbits: int = 2_000_000
) -> ClaimReport:
    """Without the equal-lists side condition the universal claim fails;
    stream the unconstrained enumeration until an uncolorable half-list
    assignment turns up and re-validate it."""
    gadget = build("g1")

    def body(deadline):
        lists, stats = find_colorability_counterexample(
            gadget, None, b=1, max_orbits=max_orbits, deadline=deadline
        )
        if lists is None:
            return (
                "error",
                {"reason": f"no counterexample within {max_orbits} orbits"},
                None,
            )
        recheck = find_coloring(gadget.graph, lists, 1, deadline=deadline)
        assert recheck.status == "UNSAT", "counterexample failed re-validation"
        return (
            "refuted",
            stats.to_dict(gadget.graph),
            {"counterexample": lists.to_dict(gadget.graph)},
        )

    return _claim("cor2.negative_control", timeout, body)


# ---------------------------------------------------------------------------
# forced-value lemmas


def _cycle5_quarter_lists_unsat(deadline: float | None) -> dict:
    """No 2-set coloring of a plain 5-cycle from uniform lists {1,2,3,4}."""
    cycle = Graph.build(
        ("a1", "a2", "a3", "a4", "a5"),
        [("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a4", "a5"), ("a5", "a1")],
    )
    lists = ListAssignment.uniform(5, ColorSet.span(1, 4))
    res = find_coloring(cycle, lists, 2, deadline=deadline)
    return {"status": res.status, "nodes": res.nodes_explored}


def verify_lemma3(
    samples: int = 10000, seed: int = DEFAULT_SEED, timeout: float | None = None
) -> list[ClaimReport]:
    gadget = build("g2")
    graph = gadget.graph

    def forced(deadline):
        y4 = graph.vertex("y4")
        negated = (
            DomainConstraint.none().avoid_color(y4, 7).avoid_color(y4, 8)
        )
        ok = (
            find_coloring(graph, gadget.base_lists, 2, negated, deadline=deadline).status
            == "UNSAT"
        )
        sub = _cycle5_quarter_lists_unsat(deadline)
        stats = {"forced": ok, "cycle5_quarter_lists": sub}
        ok = ok and sub["status"] == "UNSAT"
        return ("verified" if ok else "refuted"), stats, None

    def relaxed(deadline):
        ok, stats = verify_relaxed(
            gadget, "sampled", samples=samples, seed=seed, deadline=deadline
        )
        arts = None
        if not ok:
            arts = {"counterexample": stats.counterexample.to_dict(graph)}
        return ("sampled-pass" if ok else "refuted"), stats.to_dict(graph), arts

    return [
        _claim("lemma3.forced", timeout, forced),
        _claim("lemma3.relaxed", timeout, relaxed),
    ]


def verify_lemma4(
    samples: int = 2000, seed: int = DEFAULT_SEED, timeout: float | None = None
) -> list[ClaimReport]:
    gadget = build("g3")
    graph = gadget.graph

    def forced(deadline):
        z17 = graph.vertex("z_{1,7}")
        z27 = graph.vertex("z_{2,7}")
        negated = (
            DomainConstraint.none().forbid(z17, (7, 8)).forbid(z27, (7, 8))
        )
        res = find_coloring(graph, gadget.base_lists, 2, negated, deadline=deadline)
        ok = res.status == "UNSAT"
        return ("verified" if ok else "refuted"), {"solver": res.to_dict()}, None

    def relaxed(deadline):
        ok, stats = verify_relaxed(
            gadget, "sampled", samples=samples, seed=seed, deadline=deadline
        )
        arts = None
        if not ok:
            arts = {"counterexample": stats.counterexample.to_dict(graph)}
        return ("sampled-pass" if ok else "refuted"), stats.to_dict(graph), arts

    return [
        _claim("lemma4.forced", timeout, forced),
        _claim("lemma4.relaxed", timeout, relaxed),
    ]


def verify_lemma5(
    samples: int = 2000, seed: int = DEFAULT_SEED, timeout: float | None = None
) -> list[ClaimReport]:
    gadget = build("g4")
    graph = gadget.graph

    def forced(deadline):
        stats = {}
        ok = True
        for lab in ("w_{1,3}", "w_{2,3}"):
            negated = DomainConstraint.none().forbid(graph.vertex(lab), (7, 8))
            res = find_coloring(graph, gadget.base_lists, 2, negated, deadline=deadline)
            stats[lab] = res.to_dict()
            ok = ok and res.status == "UNSAT"
        return ("verified" if ok else "refuted"), stats, None

    def relaxed(deadline):
        ok, stats = verify_relaxed(
            gadget, "sampled", samples=samples, seed=seed, deadline=deadline
        )
        arts = None
        if not ok:
            arts = {"counterexample": stats.counterexample.to_dict(graph)}
        return ("sampled-pass" if ok else "refuted"), stats.to_dict(graph), arts

    return [
        _claim("lemma5.forced", timeout, forced),
        _claim("lemma5.relaxed", timeout, relaxed),
    ]


# ---------------------------------------------------------------------------
# main gadget


_G1_PART = ("v1", "v2", "v3", "v4", "v5", "x", "y")


def staged_residual(g5: Gadget) -> tuple[Graph, ListAssignment]:
    """Instance left on the 7-vertex part after pinning {7,8} onto the two
    designated forcing vertices: their neighbors lose colors 7 and 8."""
    graph = g5.graph
    pinned = [graph.vertex("w_{1,3}"), graph.vertex("w_{2,3}")]
    seventy_eight = ColorSet.of(7, 8)
    residual_masks = {}
    for lab in _G1_PART:
        v = graph.vertex(lab)
        cs = g5.base_lists[v]
        if any(graph.has_edge(v, w) for w in pinned):
            cs = cs - seventy_eight
        residual_masks[lab] = list(cs)
    sub = graph.induced(_G1_PART)
    return sub, ListAssignment.from_dict(sub, residual_masks)


def verify_lemma_main(
    samples: int = 10000,
    seed: int = DEFAULT_SEED,
    timeout: float | None = None,
    include_direct: bool = True,
) -> list[ClaimReport]:
    gadget = build("g5")
    graph = gadget.graph
    reports = []

    def direct(deadline):
        res = find_coloring(graph, gadget.base_lists, 2, deadline=deadline)
        ok = res.status == "UNSAT"
        arts = None
        if not ok and res.witness is not None:
            arts = {"witness": res.witness.to_dict(graph)}
        return ("verified" if ok else "refuted"), {"solver": res.to_dict()}, arts

    def staged(deadline):
        g1 = build("g1")
        sub, residual = staged_residual(gadget)
        matches = sub == g1.graph and residual == g1.base_lists
        res = find_coloring(sub, residual, 2, deadline=deadline)
        stats = {
            "residual_matches_g1": matches,
            "residual_solver": res.to_dict(),
        }
        arts = {"assumes": ["lemma5.forced"]}
        ok = matches and res.status == "UNSAT"
        return ("verified" if ok else "refuted"), stats, arts

    def halflists(deadline):
        stats = ChoosabilityStats(mode="sampled")
        t0 = time.perf_counter()
        for lists in sample_half_lists(gadget, samples, seed):
            stats.checked += 1
            res = find_coloring(graph, lists, 1, deadline=deadline)
            stats.note_solve(res)
            if res.status == "UNSAT":
                stats.violations += 1
                stats.counterexample = lists
                stats.wall_time = time.perf_counter() - t0
                return (
                    "refuted",
                    stats.to_dict(graph),
                    {"counterexample": lists.to_dict(graph)},
                )
        stats.wall_time = time.perf_counter() - t0
        return "sampled-pass", stats.to_dict(graph), None

    if include_direct:
        reports.append(_claim("lemma6.unsat.direct", timeout, direct))
    reports.append(_claim("lemma6.unsat.staged", timeout, staged))
    reports.append(_claim("lemma6.halflists", timeout, halflists))
    return reports


# ---------------------------------------------------------------------------
# final construction


def _construction_fingerprint(fc: FinalConstruction) -> str:
    payload = to_edgelist(fc.graph).encode() + lists_to_json(
        fc.graph, fc.lists
    ).encode()
    return hashlib.sha256(payload).hexdigest()


def _greedy_clique_coloring(
    lists: ListAssignment, apex: tuple[int, ...]
) -> dict[int, int]:
    """Lexicographically first proper single-color choice on the clique."""
    chosen: dict[int, int] = {}
    for r in apex:
        used = set(chosen.values())
        color = next(c for c in lists[r] if c not in used)
        chosen[r] = color
    return chosen


def _trim_to_size(mask: int, size: int) -> int:
    out = 0
    for _ in range(size):
        low = mask & -mask
        out |= low
        mask ^= low
    return out


def verify_theorem(
    samples: int = 100,
    seed: int = DEFAULT_SEED,
    universe: int = 8,
    timeout: float | None = None,
    construction: FinalConstruction | None = None,
    check_determinism: bool = True,
) -> list[ClaimReport]:
    fc = construction if construction is not None else build_final()
    graph = fc.graph
    fanout = apex_fanout(fc.template)
    n_copy = fc.template.graph.n
    apex_mask = 0
    for r in fc.apex:
        apex_mask |= fc.lists[r].mask

    def audit(deadline):
        stats: dict = {
            "copies": fc.copy_count,
            "vertices": graph.n,
            "edges": graph.edge_count,
        }
        ok = fc.copy_count == 2520
        ok = ok and graph.n == 4 + fc.copy_count * n_copy
        ok = ok and all(len(cs) == 8 for cs in fc.lists)
        stats["all_lists_size_8"] = all(len(cs) == 8 for cs in fc.lists)
        # every copy's apex-colored list part equals the union of its apex
        # neighbors' clique colors
        consistent = True
        for idx, psi in enumerate(fc.psi_list):
            start, _ = fc.copy_index[psi_key(psi)]
            for j in range(n_copy):
                expect = 0
                for r in range(fanout[j]):
                    expect |= psi[r].mask
                if fc.lists[start + j].mask & apex_mask != expect:
                    consistent = False
                    break
            if not consistent:
                break
        stats["copy_lists_consistent"] = consistent
        ok = ok and consistent
        if check_determinism:
            first = _construction_fingerprint(fc)
            second = _construction_fingerprint(build_final())
            stats["fingerprint"] = first
            stats["deterministic"] = first == second
            ok = ok and first == second
        return ("verified" if ok else "refuted"), stats, None

    def reduction(deadline):
        rng = random.Random(f"{seed}:reduction")
        probes = rng.sample(range(fc.copy_count), min(10, fc.copy_count))
        base_masks = fc.template.base_lists.masks()
        ok = True
        for idx in probes:
            psi = fc.psi_list[idx]
            start, _ = fc.copy_index[psi_key(psi)]
            for j in range(n_copy):
                removed = 0
                for r in range(fanout[j]):
                    removed |= psi[r].mask
                if fc.lists[start + j].mask & ~removed != base_masks[j]:
                    ok = False
        stats = {"probes": len(probes), "residual_lists_match_template": ok}
        return ("verified" if ok else "refuted"), stats, None

    def choosability(deadline):
        population = range(1, universe + 1)
        template_graph = fc.template.graph
        half = fc.template.half_sizes()
        stats = ChoosabilityStats(mode="sampled")
        t0 = time.perf_counter()
        for i in range(samples):
            rng = random.Random(f"{seed}:{i}")
            list_masks = []
            for _ in range(graph.n):
                mask = 0
                for c in rng.sample(population, 4):
                    mask |= 1 << (c - 1)
                list_masks.append(mask)
            lists = ListAssignment(tuple(ColorSet(m) for m in list_masks))
            phi = _greedy_clique_coloring(lists, fc.apex)
            full: list[ColorSet | None] = [None] * graph.n
            for r, c in phi.items():
                full[r] = ColorSet.of(c)
            for psi in fc.psi_list:
                start, _ = fc.copy_index[psi_key(psi)]
                copy_masks = []
                for j in range(n_copy):
                    mask = list_masks[start + j]
                    for r in range(fanout[j]):
                        mask &= ~(1 << (phi[fc.apex[r]] - 1))
                    copy_masks.append(_trim_to_size(mask, half[j]))
                copy_lists = ListAssignment(tuple(ColorSet(m) for m in copy_masks))
                res = find_coloring(template_graph, copy_lists, 1, deadline=deadline)
                stats.note_solve(res)
                if res.status == "UNSAT":
                    stats.violations += 1
                    stats.counterexample = lists
                    stats.wall_time = time.perf_counter() - t0
                    return (
                        "refuted",
                        stats.to_dict(),
                        {"sample_index": i, "copy": psi_key(psi)},
                    )
                for j in range(n_copy):
                    full[start + j] = res.witness.assignment[j]
            coloring = SetColoring(tuple(full), 1)
            assert coloring.is_total()
            if not (is_proper(graph, coloring) and respects_lists(lists, coloring)):
                stats.violations += 1
                stats.wall_time = time.perf_counter() - t0
                return ("refuted", stats.to_dict(), {"sample_index": i})
            stats.checked += 1
        stats.wall_time = time.perf_counter() - t0
        return "sampled-pass", stats.to_dict(), None

    return [
        _claim("theorem.audit", timeout, audit),
        _claim("theorem.reduction", timeout, reduction),
        _claim("theorem.choosability", timeout, choosability),
    ]


# ---------------------------------------------------------------------------
# whole-suite driver and report emission


def run_all(
    seed: int = DEFAULT_SEED,
    samples: int | None = None,
    theorem_samples: int | None = None,
    timeout: float | None = None,
    threads: int | None = None,
) -> list[ClaimReport]:
    """Run every claim; reports are sorted by claim id for determinism.

    ``samples`` overrides the per-lemma sample counts; ``theorem_samples``
    the 4-choosability sampling count.  ``threads`` (default: the
    SETCHOOSE_THREADS environment variable) distributes independent claim
    groups over a thread pool.
    """
    n3 = samples if samples is not None else 10000
    n45 = samples if samples is not None else 2000
    n6 = samples if samples is not None else 10000
    nt = theorem_samples if theorem_samples is not None else (samples or 100)
    groups = [
        lambda: verify_lemma1(timeout),
        lambda: verify_corollary2(timeout),
        lambda: verify_lemma3(n3, seed, timeout),
        lambda: verify_lemma4(n45, seed, timeout),
        lambda: verify_lemma5(n45, seed, timeout),
        lambda: verify_lemma_main(n6, seed, timeout),
        lambda: verify_theorem(nt, seed, timeout=timeout),
    ]
    workers = threads if threads is not None else thread_count()
    reports: list[ClaimReport] = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(lambda fn: fn(), groups):
                reports.extend(result)
    else:
        for fn in groups:
            reports.extend(fn())
    reports.sort(key=lambda r: r.claim_id)
    return reports


_OK_STATUSES = {"verified", "sampled-pass", "skipped"}


def exit_code(reports: list[ClaimReport]) -> int:
    return 0 if all(r.status in _OK_STATUSES for r in reports) else 1


def emit_report(reports: list[ClaimReport], format: str = "text") -> str:
    """Render reports as a JSON array or a human-readable table."""
    if format == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    if not reports:
        return "no claims run\n"
    width = max(len(r.claim_id) for r in reports)
    lines = []
    for r in reports:
        extra = ""
        if r.status in ("refuted", "error"):
            reason = r.statistics.get("reason")
            extra = f"  ({reason})" if reason else "  (see artifacts)"
        lines.append(
            f"{r.claim_id:<{width}}  {r.status:<12} {r.duration:9.2f}s{extra}"
        )
    verdict = "PASS" if exit_code(reports) == 0 else "FAIL"
    lines.append(f"overall: {verdict} ({len(reports)} claims)")
    return "\n".join(lines) + "\n"
