"""Matching solvers: soundness, exact completeness, determinism, budgets."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from nestkit import (
    BipartiteHypergraph,
    Edge,
    Matching,
    SolverConfig,
    brute_force_matching,
    build_nesting_hypergraph,
    solve,
    verify_matching,
)
from nestkit.designs import Design


def random_hypergraph(rng, max_a=6, max_right=10, max_edges_per_a=5, max_k=3):
    n_a = rng.randint(0, max_a)
    k = rng.randint(1, max_k)
    n_right = rng.randint(k, max_right)
    edges = []
    for ai in range(n_a):
        for _ in range(rng.randint(0, max_edges_per_a)):
            right = tuple(rng.sample(range(n_right), k))
            edges.append(Edge(left=ai, right=right))
    return BipartiteHypergraph(
        k=k,
        left_labels=tuple(f"a{i}" for i in range(n_a)),
        right_labels=tuple(range(n_right)),
        edges=tuple(edges),
    )


def test_single_edge_instance():
    h = BipartiteHypergraph(2, ("a",), (0, 1), (Edge(0, (0, 1)),))
    res = solve(h)
    assert res.outcome == "found"
    assert res.matching.edge_indices == (0,)


def test_empty_a_part_is_trivially_matched():
    h = BipartiteHypergraph(1, (), (0,), ())
    res = solve(h)
    assert res.outcome == "found" and len(res.matching) == 0
    assert verify_matching(h, res.matching).ok


def test_shared_right_vertex_proves_nonexistence():
    h = BipartiteHypergraph(
        1, ("a", "b"), (0,), (Edge(0, (0,)), Edge(1, (0,)))
    )
    res = solve(h)
    assert res.outcome == "nonexistent"
    assert brute_force_matching(h) is None


def test_vertex_with_no_edges_is_nonexistent():
    h = BipartiteHypergraph(1, ("a", "b"), (0, 1), (Edge(0, (0,)),))
    assert solve(h).outcome == "nonexistent"
    assert brute_force_matching(h) is None


def test_fano_nesting_matching_found():
    d = Design(7, 3, 1, tuple(
        tuple(sorted(((0 + g) % 7, (1 + g) % 7, (3 + g) % 7))) for g in range(7)
    ))
    h = build_nesting_hypergraph(d)
    res = solve(h, SolverConfig(mode="exact"))
    assert res.outcome == "found"
    assert len(res.matching) == 7
    assert verify_matching(h, res.matching).ok


def test_budget_outcome_is_not_nonexistence():
    d = Design(9, 3, 1, (
        (0, 1, 2), (3, 4, 5), (6, 7, 8),
        (0, 3, 6), (1, 4, 7), (2, 5, 8),
        (0, 4, 8), (1, 5, 6), (2, 3, 7),
        (0, 5, 7), (1, 3, 8), (2, 4, 6),
    ))
    h = build_nesting_hypergraph(d)
    full = solve(h)
    assert full.outcome == "nonexistent"  # STS(9) has no nesting
    clipped = solve(h, SolverConfig(node_budget=50))
    assert clipped.outcome == "budget"
    assert clipped.nodes <= 51


def test_exact_agrees_with_brute_force_on_random_instances():
    rng = random.Random(1131)
    disagreements = 0
    for _ in range(250):
        h = random_hypergraph(rng)
        oracle = brute_force_matching(h)
        res = solve(h)
        assert res.outcome in ("found", "nonexistent")
        if (oracle is None) != (res.matching is None):
            disagreements += 1
        if res.matching is not None:
            assert verify_matching(h, res.matching).ok
    assert disagreements == 0


def test_heuristic_is_sound_and_may_fail():
    rng = random.Random(23)
    for _ in range(150):
        h = random_hypergraph(rng)
        res = solve(h, SolverConfig(mode="heuristic", seed=rng.randint(0, 10**6)))
        assert res.outcome in ("found", "budget")
        if res.matching is not None:
            assert verify_matching(h, res.matching).ok
            assert brute_force_matching(h) is not None


def test_determinism_exact_and_heuristic():
    rng = random.Random(5150)
    for _ in range(40):
        h = random_hypergraph(rng)
        for cfg in (
            SolverConfig(mode="exact"),
            SolverConfig(mode="heuristic", seed=99),
        ):
            r1 = solve(h, cfg)
            r2 = solve(h, cfg)
            assert r1.outcome == r2.outcome
            assert r1.matching == r2.matching
            assert r1.nodes == r2.nodes


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(mode="annealing")
    with pytest.raises(ValueError):
        SolverConfig(node_budget=0)
    with pytest.raises(ValueError):
        SolverConfig(parallelism=0)


def test_matching_type_rejects_duplicates():
    with pytest.raises(ValueError):
        Matching((1, 1))


def test_verify_matching_reports():
    h = BipartiteHypergraph(
        1,
        ("a", "b"),
        (0, 1),
        (Edge(0, (0,)), Edge(1, (0,)), Edge(1, (1,))),
    )
    rep = verify_matching(h, Matching((0, 1)))
    assert not rep.ok and rep.collision == (0, 1, ("R", 0))
    rep2 = verify_matching(h, Matching((0,)))
    assert not rep2.ok and rep2.uncovered_left == 1
    assert verify_matching(h, Matching((0, 2))).ok
    with pytest.raises(ValueError):
        verify_matching(h, Matching((7,)))


def test_verify_matching_same_left_collision():
    h = BipartiteHypergraph(
        1, ("a",), (0, 1), (Edge(0, (0,)), Edge(0, (1,)))
    )
    rep = verify_matching(h, Matching((0, 1)))
    assert not rep.ok and rep.collision == (0, 1, ("A", 0))


def test_brute_force_bounds():
    rng = random.Random(2)
    big = random_hypergraph(rng, max_a=6)
    with pytest.raises(ValueError, match="too large"):
        brute_force_matching(big, max_a=3)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=80, deadline=None)
def test_solver_soundness_property(seed):
    rng = random.Random(seed)
    h = random_hypergraph(rng)
    res = solve(h)
    if res.matching is not None:
        assert verify_matching(h, res.matching).ok
    else:
        assert brute_force_matching(h) is None
