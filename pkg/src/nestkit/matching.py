"""A-perfect matching solvers for bipartite uniform hypergraphs.

The exact solver is a backtracking search that always branches on the
A-vertex with the fewest remaining compatible edges (fail-first), breaking
ties by vertex index, and keeps right-vertex occupancy in a bitmask. It is
deterministic and, when it exhausts the search space, its negative answer is
a proof of nonexistence. Running out of node budget is reported separately:
"budget" never means "nonexistent".

The heuristic solver does randomized greedy passes with restarts. It can
miss matchings that exist but never returns an invalid one.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from math import prod

from .hypergraph import BipartiteHypergraph, Matching

OUTCOME_FOUND = "found"
OUTCOME_NONEXISTENT = "nonexistent"
OUTCOME_BUDGET = "budget"


@dataclass(frozen=True)
class SolverConfig:
    """Search knobs. Budgets must be positive; with parallelism 1 and a fixed
    seed the output is deterministic (the solver currently runs sequentially
    for every parallelism value, which keeps that guarantee trivially)."""

    mode: str = "exact"
    seed: int = 0
    restart_budget: int = 1000
    node_budget: int = 1_000_000
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "heuristic"):
            raise ValueError(f"mode must be 'exact' or 'heuristic', got {self.mode!r}")
        if self.restart_budget < 1 or self.node_budget < 1 or self.parallelism < 1:
            raise ValueError("budgets and parallelism must be positive")


@dataclass(frozen=True)
class SolveResult:
    """Outcome plus search statistics; matching is None unless found."""

    outcome: str
    matching: Matching | None
    nodes: int
    restarts: int
    wall_time: float


def _edge_masks(h: BipartiteHypergraph) -> list[int]:
    masks = []
    for e in h.edges:
        m = 0
        for j in e.right:
            m |= 1 << j
        masks.append(m)
    return masks


def _edges_per_left(h: BipartiteHypergraph) -> list[list[int]]:
    per_a: list[list[int]] = [[] for _ in range(h.n_left)]
    for ei, e in enumerate(h.edges):
        per_a[e.left].append(ei)
    return per_a


def _solve_exact(h: BipartiteHypergraph, cfg: SolverConfig) -> tuple[str, list[int] | None, int]:
    per_a = _edges_per_left(h)
    masks = _edge_masks(h)
    unassigned = set(range(h.n_left))
    chosen: dict[int, int] = {}
    nodes = 0
    aborted = False

    def recurse(occupied: int) -> bool:
        nonlocal nodes, aborted
        if not unassigned:
            return True
        # fail-first: branch on the A-vertex with fewest compatible edges
        target = -1
        target_edges: list[int] = []
        first = True
        for ai in sorted(unassigned):
            compat = [ei for ei in per_a[ai] if not masks[ei] & occupied]
            if first or len(compat) < len(target_edges):
                target, target_edges, first = ai, compat, False
                if not compat:
                    return False
        unassigned.discard(target)
        for ei in target_edges:
            nodes += 1
            if nodes > cfg.node_budget:
                aborted = True
                break
            chosen[target] = ei
            if recurse(occupied | masks[ei]):
                return True
            del chosen[target]
            if aborted:
                break
        unassigned.add(target)
        return False

    found = recurse(0)
    if found:
        return OUTCOME_FOUND, sorted(chosen.values()), nodes
    if aborted:
        return OUTCOME_BUDGET, None, nodes
    return OUTCOME_NONEXISTENT, None, nodes


def _solve_heuristic(
    h: BipartiteHypergraph, cfg: SolverConfig
) -> tuple[str, list[int] | None, int, int]:
    per_a = _edges_per_left(h)
    masks = _edge_masks(h)
    rng = random.Random(cfg.seed)
    nodes = 0
    order = list(range(h.n_left))
    for restart in range(1, cfg.restart_budget + 1):
        rng.shuffle(order)
        occupied = 0
        chosen: list[int] = []
        dead = False
        for ai in order:
            compat = [ei for ei in per_a[ai] if not masks[ei] & occupied]
            if not compat:
                dead = True
                break
            ei = rng.choice(compat)
            nodes += 1
            if nodes > cfg.node_budget:
                return OUTCOME_BUDGET, None, nodes, restart
            occupied |= masks[ei]
            chosen.append(ei)
        if not dead:
            return OUTCOME_FOUND, sorted(chosen), nodes, restart
    return OUTCOME_BUDGET, None, nodes, cfg.restart_budget


def solve(h: BipartiteHypergraph, cfg: SolverConfig | None = None) -> SolveResult:
    """Search for an A-perfect matching.

    Exact mode either finds a matching, proves none exists, or runs out of
    node budget; heuristic mode either finds one or runs out of restarts.
    """
    cfg = cfg or SolverConfig()
    start = time.perf_counter()
    if cfg.mode == "exact":
        outcome, edge_list, nodes = _solve_exact(h, cfg)
        restarts = 0
    else:
        outcome, edge_list, nodes, restarts = _solve_heuristic(h, cfg)
    wall = time.perf_counter() - start
    matching = Matching(tuple(edge_list)) if edge_list is not None else None
    return SolveResult(
        outcome=outcome,
        matching=matching,
        nodes=nodes,
        restarts=restarts,
        wall_time=wall,
    )


@dataclass(frozen=True)
class MatchingReport:
    """Validity of a matching: first collision or uncovered A-vertex."""

    ok: bool
    problem: str | None = None
    collision: tuple[int, int, tuple] | None = None  # (edge i, edge j, vertex)
    uncovered_left: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_matching(h: BipartiteHypergraph, m: Matching) -> MatchingReport:
    """Check that edges are pairwise vertex-disjoint and cover all of A."""
    for ei in m.edge_indices:
        if not 0 <= ei < len(h.edges):
            raise ValueError(f"edge index {ei} out of range")
    left_owner: dict[int, int] = {}
    right_owner: dict[int, int] = {}
    for ei in m.edge_indices:
        e = h.edges[ei]
        if e.left in left_owner:
            return MatchingReport(
                ok=False,
                problem=f"edges {left_owner[e.left]} and {ei} share A-vertex {e.left}",
                collision=(left_owner[e.left], ei, ("A", e.left)),
            )
        left_owner[e.left] = ei
        for j in e.right:
            if j in right_owner:
                return MatchingReport(
                    ok=False,
                    problem=f"edges {right_owner[j]} and {ei} share right vertex {j}",
                    collision=(right_owner[j], ei, ("R", j)),
                )
            right_owner[j] = ei
    for ai in range(h.n_left):
        if ai not in left_owner:
            return MatchingReport(
                ok=False,
                problem=f"A-vertex {ai} is not covered",
                uncovered_left=ai,
            )
    return MatchingReport(ok=True)


def brute_force_matching(
    h: BipartiteHypergraph, max_a: int = 6, max_combinations: int = 2_000_000
) -> Matching | None:
    """Test oracle: enumerate one edge choice per A-vertex exhaustively.

    Only meant for tiny instances; refuses anything with more than max_a
    A-vertices or more than max_combinations choice tuples.
    """
    if h.n_left > max_a:
        raise ValueError(f"instance too large: {h.n_left} A-vertices, limit {max_a}")
    per_a = _edges_per_left(h)
    if any(not lst for lst in per_a):
        return None
    total = prod(len(lst) for lst in per_a)
    if total > max_combinations:
        raise ValueError(f"instance too large: {total} choice combinations")
    masks = _edge_masks(h)
    for combo in product(*per_a):
        occupied = 0
        ok = True
        for ei in combo:
            if masks[ei] & occupied:
                ok = False
                break
            occupied |= masks[ei]
        if ok:
            return Matching(tuple(combo))
    return None
