"""Cyclic designs: orbit decomposition and disjoint orbit representatives.

A cyclic (v,k,lam)-BIBD is invariant under x -> x+1 on Z_v; its blocks split
into orbits, each either full (v distinct translates) or short. The
selection pipeline places short-orbit representatives greedily, then hands
the full orbits to the matching solver over the translation hypergraph, so
that one block per orbit is chosen with all chosen blocks pairwise disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from . import matching
from .designs import Block, Design, verify_bibd
from .groups import AbelianGroup, GroupSubset, blocking_translations
from .hypergraph import build_novak_hypergraph


class PlacementError(RuntimeError):
    """Greedy short-orbit placement found no translation avoiding the
    already-placed points."""


def _canonical_base(block: Iterable[int], v: int) -> Block:
    """Lexicographically least translate of a block, the orbit's name."""
    b = sorted(int(x) % v for x in block)
    if len(set(b)) != len(b):
        raise ValueError(f"block repeats a point: {tuple(b)}")
    return min(tuple(sorted((x + a) % v for x in b)) for a in range(v))


def _stabilizer_size(block: Block, v: int) -> int:
    members = frozenset(block)
    return sum(1 for a in range(v) if frozenset((x + a) % v for x in block) == members)


def orbit_blocks(base: Block, v: int) -> tuple[Block, ...]:
    """The distinct translates of a base block, in increasing shift order."""
    seen = set()
    out = []
    for a in range(v):
        shifted = tuple(sorted((x + a) % v for x in base))
        if shifted not in seen:
            seen.add(shifted)
            out.append(shifted)
    return tuple(out)


@dataclass(frozen=True)
class Orbit:
    base: Block
    length: int
    kind: str  # "short" | "full"


@dataclass(frozen=True)
class CyclicBibd:
    """A cyclic (v,k,lam)-BIBD given by one base block per orbit.

    Base blocks are canonicalized to the lexicographically least translate on
    ingestion. Construction fails unless developing every orbit yields a
    design that passes the exact pair-coverage check.
    """

    v: int
    k: int
    lam: int
    base_blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        if self.v < 2 or not 2 <= self.k <= self.v or self.lam < 1:
            raise ValueError(
                f"need v >= 2, 2 <= k <= v and lam >= 1, got ({self.v},{self.k},{self.lam})"
            )
        bases = tuple(_canonical_base(b, self.v) for b in self.base_blocks)
        for i, b in enumerate(bases):
            if len(b) != self.k:
                raise ValueError(f"base block {i} has size {len(b)}, expected k={self.k}")
        if len(set(bases)) != len(bases):
            raise ValueError("two base blocks lie in the same orbit")
        object.__setattr__(self, "base_blocks", bases)
        report = verify_bibd(develop_cyclic_bases(self.v, self.k, self.lam, bases))
        if not report.ok:
            raise ValueError(
                f"orbits do not develop into a ({self.v},{self.k},{self.lam})-BIBD: "
                f"pair {report.witness_pair} is covered {report.witness_count} times"
            )


def develop_cyclic_bases(v: int, k: int, lam: int, bases: Sequence[Block]) -> Design:
    """Design whose block list is the concatenation of all orbits."""
    blocks: list[Block] = []
    for base in bases:
        blocks.extend(orbit_blocks(base, v))
    return Design(v=v, k=k, lam=lam, blocks=tuple(blocks))


def develop_cyclic(c: CyclicBibd) -> Design:
    return develop_cyclic_bases(c.v, c.k, c.lam, c.base_blocks)


def decompose_orbits(c: CyclicBibd) -> tuple[Orbit, ...]:
    """Orbit lengths via stabilizers; length v means a full orbit."""
    orbits = []
    for base in c.base_blocks:
        length = c.v // _stabilizer_size(base, c.v)
        orbits.append(Orbit(base=base, length=length, kind="full" if length == c.v else "short"))
    return tuple(orbits)


@dataclass(frozen=True)
class OrbitBoundsReport:
    """Short/full orbit counts against their arithmetic windows.

    For a valid cyclic (v,k,lam)-BIBD with h short and m full orbits,
    h <= 2*lam*sqrt(k) and lam(v-1)/(k(k-1)) - 2*lam*sqrt(k) <= m <=
    lam(v-1)/(k(k-1)). Checked in exact integer arithmetic.
    """

    ok: bool
    h: int
    m: int
    h_bound: float
    m_upper: float
    h_ok: bool
    m_upper_ok: bool
    m_lower_ok: bool

    def __bool__(self) -> bool:
        return self.ok


def check_orbit_bounds(c: CyclicBibd) -> OrbitBoundsReport:
    orbits = decompose_orbits(c)
    h = sum(1 for o in orbits if o.kind == "short")
    m = len(orbits) - h
    k, lam, v = c.k, c.lam, c.v
    h_ok = h * h <= 4 * lam * lam * k  # h <= 2*lam*sqrt(k)
    m_upper_ok = m * k * (k - 1) <= lam * (v - 1)
    deficit = lam * (v - 1) - m * k * (k - 1)  # (bound - m) * k(k-1)
    m_lower_ok = deficit <= 0 or deficit * deficit <= 4 * lam * lam * k * (k * (k - 1)) ** 2
    return OrbitBoundsReport(
        ok=h_ok and m_upper_ok and m_lower_ok,
        h=h,
        m=m,
        h_bound=2.0 * lam * k**0.5,
        m_upper=lam * (v - 1) / (k * (k - 1)),
        h_ok=h_ok,
        m_upper_ok=m_upper_ok,
        m_lower_ok=m_lower_ok,
    )


def place_short_orbits(
    short_bases: Sequence[Block], v: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Greedy disjoint placement of short-orbit representatives.

    Processes the bases in the given order, choosing for each the least
    translation whose translate avoids everything placed so far (the first
    base therefore lands at 0). Returns the chosen translations and the
    union T of the placed blocks. Raises PlacementError when some step has
    no admissible translation, which can happen for small v.
    """
    g = AbelianGroup((v,))
    placed: set[int] = set()
    shifts: list[int] = []
    for i, base in enumerate(short_bases):
        if placed:
            blocked = blocking_translations(
                GroupSubset(g, base), GroupSubset(g, sorted(placed))
            )
            blocked_ints = {a[0] for a in blocked}
            if len(blocked_ints) > len(base) * len(placed):
                raise AssertionError("blocking translation bound violated")
        else:
            blocked_ints = set()
        choice = next((a for a in range(v) if a not in blocked_ints), None)
        if choice is None:
            raise PlacementError(
                f"no translation of short base {i} {base} avoids the "
                f"{len(placed)} already placed points"
            )
        shifts.append(choice)
        placed.update((x + choice) % v for x in base)
    return tuple(shifts), tuple(sorted(placed))


@dataclass(frozen=True)
class NovakResult:
    """Outcome of the one-disjoint-block-per-orbit pipeline.

    outcome is "found", "greedy_failed" (short-orbit placement stuck),
    "matching_none" (solver proved no matching for the chosen short
    placement; only a nonexistence proof for the design when h = 0), or
    "matching_budget". selection is aligned with the design's base blocks.
    """

    outcome: str
    h: int
    selection: tuple[Block, ...] | None
    translations: tuple[int, ...] | None
    solve: matching.SolveResult | None

    @property
    def found(self) -> bool:
        return self.outcome == "found"


def _select_once(
    c: CyclicBibd, short_idx: Sequence[int], cfg: matching.SolverConfig | None
) -> NovakResult:
    orbits = decompose_orbits(c)
    full_idx = [i for i, o in enumerate(orbits) if o.kind == "full"]
    h = len(short_idx)
    try:
        short_shifts, forbidden = place_short_orbits(
            [c.base_blocks[i] for i in short_idx], c.v
        )
    except PlacementError:
        return NovakResult(
            outcome="greedy_failed", h=h, selection=None, translations=None, solve=None
        )
    hyper = build_novak_hypergraph(
        c.v, [c.base_blocks[i] for i in full_idx], forbidden, k=c.k
    )
    result = matching.solve(hyper, cfg)
    if result.matching is None:
        outcome = "matching_none" if result.outcome == matching.OUTCOME_NONEXISTENT else "matching_budget"
        return NovakResult(outcome=outcome, h=h, selection=None, translations=None, solve=result)
    shift_of: dict[int, int] = {}
    for i, a in zip(short_idx, short_shifts):
        shift_of[i] = a
    for ei in result.matching.edge_indices:
        bi, a = hyper.edges[ei].payload
        shift_of[full_idx[bi]] = a
    translations = tuple(shift_of[i] for i in range(len(orbits)))
    selection = tuple(
        tuple(sorted((x + a) % c.v for x in base))
        for base, a in zip(c.base_blocks, translations)
    )
    return NovakResult(
        outcome="found", h=h, selection=selection, translations=translations, solve=result
    )


def novak_select(
    c: CyclicBibd,
    cfg: matching.SolverConfig | None = None,
    greedy_retries: int = 0,
) -> NovakResult:
    """Choose one block per orbit so that the chosen blocks are disjoint.

    Pipeline: place short orbits greedily, build the translation hypergraph
    for the full orbits over the remaining points, solve for an A-perfect
    matching, and decode each edge payload back into a block. greedy_retries
    allows up to that many alternative short-orbit orders (a heuristic knob:
    a different placement can unblock the matching on borderline small v).
    """
    orbits = decompose_orbits(c)
    short_idx = tuple(i for i, o in enumerate(orbits) if o.kind == "short")
    first = _select_once(c, short_idx, cfg)
    if first.found or greedy_retries <= 0:
        return first
    tried = 0
    result = first
    for perm in permutations(short_idx):
        if perm == short_idx:
            continue
        tried += 1
        if tried > greedy_retries:
            break
        result = _select_once(c, perm, cfg)
        if result.found:
            return result
    return result


@dataclass(frozen=True)
class SelectionReport:
    """Validity of a one-block-per-orbit selection."""

    ok: bool
    problem: str | None = None
    overlap: tuple[int, int, int] | None = None  # (orbit i, orbit j, shared point)
    bad_orbit: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_disjoint_selection(c: CyclicBibd, selection: Sequence[Block]) -> SelectionReport:
    """Each selected block must be a translate of its orbit's base, and the
    selected blocks must be pairwise disjoint."""
    if len(selection) != len(c.base_blocks):
        return SelectionReport(
            ok=False,
            problem=f"{len(selection)} blocks selected for {len(c.base_blocks)} orbits",
        )
    blocks = []
    for i, raw in enumerate(selection):
        block = tuple(sorted(int(x) % c.v for x in raw))
        if _canonical_base(block, c.v) != c.base_blocks[i]:
            return SelectionReport(
                ok=False,
                problem=f"block {block} is not in the orbit of base {c.base_blocks[i]}",
                bad_orbit=i,
            )
        blocks.append(block)
    seen: dict[int, int] = {}
    for i, block in enumerate(blocks):
        for x in block:
            if x in seen:
                return SelectionReport(
                    ok=False,
                    problem=f"orbits {seen[x]} and {i} both use point {x}",
                    overlap=(seen[x], i, x),
                )
            seen[x] = i
    return SelectionReport(ok=True)
