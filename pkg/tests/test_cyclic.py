"""Cyclic designs: orbits, bound checks, greedy placement, and selections."""

import random

import pytest

from corpus import cyclic_corpus, cyclic_corpus_dict
from nestkit import (
    CyclicBibd,
    SolverConfig,
    check_orbit_bounds,
    decompose_orbits,
    develop_cyclic,
    novak_select,
    place_short_orbits,
    verify_bibd,
    verify_disjoint_selection,
)
from nestkit.cyclic import PlacementError, orbit_blocks


def sts(name):
    return cyclic_corpus_dict()[name]


# --- construction and orbits --------------------------------------------------


def test_cyclic_bibd_canonicalizes_bases():
    c = CyclicBibd(13, 3, 1, ((1, 2, 5), (0, 2, 7)))  # {1,2,5} = {0,1,4}+1
    assert c.base_blocks == ((0, 1, 4), (0, 2, 7))


def test_cyclic_bibd_rejects_same_orbit_twice():
    with pytest.raises(ValueError, match="same orbit"):
        CyclicBibd(13, 3, 1, ((0, 1, 4), (1, 2, 5)))


def test_cyclic_bibd_rejects_non_bibd():
    with pytest.raises(ValueError, match="develop"):
        CyclicBibd(13, 3, 1, ((0, 1, 4),))  # misses half the differences


def test_decompose_orbits_sts7():
    c = CyclicBibd(7, 3, 1, ((0, 1, 3),))
    (orbit,) = decompose_orbits(c)
    assert orbit.kind == "full" and orbit.length == 7


def test_decompose_orbits_sts15():
    orbits = decompose_orbits(sts("sts15"))
    kinds = {o.base: (o.kind, o.length) for o in orbits}
    assert kinds[(0, 5, 10)] == ("short", 5)
    assert kinds[(0, 1, 4)] == ("full", 15)
    assert kinds[(0, 2, 8)] == ("full", 15)


def test_decompose_orbits_sts13():
    orbits = decompose_orbits(sts("sts13"))
    assert all(o.kind == "full" for o in orbits)
    assert len(orbits) == 2


def test_orbit_lengths_sum_to_block_count():
    for label, c in cyclic_corpus():
        orbits = decompose_orbits(c)
        assert sum(o.length for o in orbits) == develop_cyclic(c).block_count, label


def test_developed_corpus_designs_are_bibds():
    for label, c in cyclic_corpus():
        assert verify_bibd(develop_cyclic(c)).ok, label


# --- orbit count bounds ---------------------------------------------------------


def test_orbit_bounds_examples():
    rep15 = check_orbit_bounds(sts("sts15"))
    assert rep15.ok and (rep15.h, rep15.m) == (1, 2)
    rep7 = check_orbit_bounds(CyclicBibd(7, 3, 1, ((0, 1, 3),)))
    assert rep7.ok and (rep7.h, rep7.m) == (0, 1)
    assert rep7.m == rep7.m_upper  # tight: m equals lam(v-1)/(k(k-1)) exactly
    rep13 = check_orbit_bounds(sts("sts13"))
    assert rep13.ok and (rep13.h, rep13.m) == (0, 2)


def test_orbit_bounds_hold_across_corpus_and_multipliers():
    # multiplying a cyclic design by a unit yields another cyclic design;
    # every variant must satisfy the short/full count windows
    from math import gcd

    rng = random.Random(8080)
    checked = 0
    for label, c in cyclic_corpus():
        units = [u for u in range(1, c.v) if gcd(u, c.v) == 1]
        picks = rng.sample(units, min(6, len(units)))
        for u in picks:
            bases = tuple(tuple((u * x) % c.v for x in b) for b in c.base_blocks)
            variant = CyclicBibd(c.v, c.k, c.lam, bases)
            assert check_orbit_bounds(variant).ok, (label, u)
            checked += 1
    assert checked >= 30


# --- greedy short-orbit placement ----------------------------------------------


def test_place_short_orbits_empty():
    shifts, forbidden = place_short_orbits([], 15)
    assert shifts == () and forbidden == ()


def test_place_short_orbits_sts15():
    shifts, forbidden = place_short_orbits([(0, 5, 10)], 15)
    assert shifts == (0,)
    assert forbidden == (0, 5, 10)


def test_place_short_orbits_two_blocks():
    shifts, forbidden = place_short_orbits([(0, 10), (0, 10)], 20)
    assert shifts[0] == 0
    assert len(forbidden) == 4
    a = shifts[1]
    assert {(0 + a) % 20, (10 + a) % 20}.isdisjoint({0, 10})


def test_place_short_orbits_failure_reported():
    # two translates of {0,1,2,3} can never be disjoint in Z7
    with pytest.raises(PlacementError):
        place_short_orbits([(0, 1, 2, 3), (0, 1, 2, 3)], 7)


def test_place_short_orbits_respects_blocking_bound():
    # |T| grows by k each step; the blocked set stays within k*|T|
    rng = random.Random(99)
    for _ in range(50):
        v = rng.randint(12, 40)
        k = rng.randint(2, 4)
        bases = [tuple(rng.sample(range(v), k)) for _ in range(rng.randint(1, 3))]
        try:
            shifts, forbidden = place_short_orbits(bases, v)
        except PlacementError:
            continue
        assert len(forbidden) == k * len(bases)


# --- selections -----------------------------------------------------------------


def test_novak_select_single_orbit():
    c = CyclicBibd(7, 3, 1, ((0, 1, 3),))
    res = novak_select(c)
    assert res.found
    assert len(res.selection) == 1
    assert verify_disjoint_selection(c, res.selection).ok


def test_novak_select_sts13():
    c = sts("sts13")
    res = novak_select(c)
    assert res.found
    assert verify_disjoint_selection(c, res.selection).ok
    a, b = (set(block) for block in res.selection)
    assert not a & b


def test_novak_select_all_fixtures_exact():
    for name in ("sts13", "sts15", "sts19", "sts21"):
        c = sts(name)
        res = novak_select(c, SolverConfig(mode="exact"))
        assert res.found, name
        assert verify_disjoint_selection(c, res.selection).ok, name


def test_novak_select_round_trip_across_corpus():
    for label, c in cyclic_corpus():
        res = novak_select(c)
        if res.found:
            rep = verify_disjoint_selection(c, res.selection)
            assert rep.ok, (label, rep.problem)


def test_novak_select_heuristic_mode():
    c = sts("sts15")
    res = novak_select(c, SolverConfig(mode="heuristic", seed=11))
    if res.found:
        assert verify_disjoint_selection(c, res.selection).ok


def test_novak_select_budget():
    c = sts("sts21")
    res = novak_select(c, SolverConfig(node_budget=1))
    assert res.outcome in ("found", "matching_budget")


# --- selection verification ------------------------------------------------------


def test_verify_selection_overlap_reported():
    c = sts("sts13")
    rep = verify_disjoint_selection(c, ((0, 1, 4), (0, 2, 7)))
    assert not rep.ok
    assert rep.overlap is not None and rep.overlap[2] == 0


def test_verify_selection_orbit_membership():
    c = sts("sts13")
    rep = verify_disjoint_selection(c, ((0, 1, 4), (1, 3, 9)))  # not a translate of {0,2,7}
    assert not rep.ok and rep.bad_orbit == 1


def test_verify_selection_wrong_count():
    c = sts("sts13")
    rep = verify_disjoint_selection(c, ((0, 1, 4),))
    assert not rep.ok


def test_orbit_blocks_short():
    blocks = orbit_blocks((0, 5, 10), 15)
    assert len(blocks) == 5
    assert blocks[0] == (0, 5, 10) and blocks[1] == (1, 6, 11)
