"""Difference families over finite abelian groups, and their Banff variants.

A (G,k,lam)-difference family is a list of k-element base blocks whose
internal differences cover every nonzero group element exactly lam times.
It is a Banff difference family when the base blocks together with their
negatives are pairwise disjoint; developing such a family by all group
elements and anchoring each translate F+g at g yields a nested packing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import hypergraph as hg
from . import matching
from .designs import Design, NestingCertificate, apply_nesting
from .groups import AbelianGroup, Element, GroupSubset, negate, translate


@dataclass(frozen=True)
class DifferenceFamily:
    """Base blocks in a group, all of size k, with claimed pair index lam.

    k is stored explicitly so that the size invariant stays meaningful for
    the degenerate empty family (lam = 0).
    """

    group: AbelianGroup
    base_blocks: tuple[GroupSubset, ...]
    lam: int
    k: int = 0

    def __init__(
        self,
        group: AbelianGroup,
        base_blocks: Iterable[GroupSubset | Iterable],
        lam: int,
        k: int | None = None,
    ):
        blocks = tuple(
            b if isinstance(b, GroupSubset) else GroupSubset(group, b)
            for b in base_blocks
        )
        for i, b in enumerate(blocks):
            if b.group != group:
                raise ValueError(f"base block {i} lives in {b.group}, family in {group}")
        if k is None:
            if not blocks:
                raise ValueError("k must be given for an empty family")
            k = len(blocks[0])
        for i, b in enumerate(blocks):
            if len(b) != k:
                raise ValueError(f"base block {i} has size {len(b)}, expected k={k}")
        if k < 2:
            raise ValueError(f"base blocks need k >= 2, got k={k}")
        if lam < 0 or (lam == 0 and blocks):
            raise ValueError("lam must be positive for a nonempty family")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "base_blocks", blocks)
        object.__setattr__(self, "lam", int(lam))
        object.__setattr__(self, "k", int(k))


def delta_list(family: DifferenceFamily) -> Counter[Element]:
    """Multiset of all ordered within-block differences f - f', f != f'."""
    g = family.group
    out: Counter[Element] = Counter()
    for block in family.base_blocks:
        els = block.elements
        for f in els:
            for fp in els:
                if f != fp:
                    out[g.sub(f, fp)] += 1
    return out


@dataclass(frozen=True)
class DfReport:
    """First element whose difference multiplicity misses lam, if any."""

    ok: bool
    lam: int
    element: Element | None
    count: int | None

    def __bool__(self) -> bool:
        return self.ok


def verify_df(family: DifferenceFamily) -> DfReport:
    """Check that differences cover each nonzero element exactly lam times."""
    deltas = delta_list(family)
    g = family.group
    zero = g.zero()
    for el in g.elements():
        if el == zero:
            continue
        count = deltas.get(el, 0)
        if count != family.lam:
            return DfReport(ok=False, lam=family.lam, element=el, count=count)
    return DfReport(ok=True, lam=family.lam, element=None, count=None)


@dataclass(frozen=True)
class BdfReport:
    """Banff check: the DF report plus the first colliding pair of sets among
    all base blocks and their negatives."""

    ok: bool
    df: DfReport
    collision: tuple[str, str, Element] | None

    def __bool__(self) -> bool:
        return self.ok


def verify_bdf(family: DifferenceFamily) -> BdfReport:
    """A valid DF whose base blocks and their negatives are mutually disjoint.

    Disjointness of each block from its own negative forces 0 out of every
    base block, so that is not checked separately.
    """
    df_report = verify_df(family)
    labeled: list[tuple[str, frozenset[Element]]] = []
    for i, block in enumerate(family.base_blocks):
        labeled.append((f"F{i}", frozenset(block.elements)))
        labeled.append((f"-F{i}", frozenset(negate(block).elements)))
    collision = None
    for i in range(len(labeled)):
        for j in range(i + 1, len(labeled)):
            common = labeled[i][1] & labeled[j][1]
            if common:
                collision = (labeled[i][0], labeled[j][0], min(common))
                break
        if collision:
            break
    return BdfReport(ok=df_report.ok and collision is None, df=df_report, collision=collision)


def develop(family: DifferenceFamily) -> Design:
    """Develop the family through the whole group into a block design.

    Points are group elements under their lexicographic index. All |G|
    translates of every base block are listed even when translates repeat,
    so the multiset keeps the pair count exact.
    """
    report = verify_df(family)
    if not report.ok:
        raise ValueError(
            f"cannot develop: element {report.element} is covered "
            f"{report.count} times, not {family.lam}"
        )
    g = family.group
    blocks = []
    for base in family.base_blocks:
        for a in g.elements():
            blocks.append(tuple(g.index(el) for el in translate(base, a)))
    return Design(v=g.order, k=family.k, lam=family.lam, blocks=tuple(blocks))


def develop_with_anchor(family: DifferenceFamily) -> NestingCertificate:
    """Develop a Banff family and anchor each translate F+g at the point g."""
    report = verify_bdf(family)
    if not report.ok:
        detail = (
            f"sets {report.collision[0]} and {report.collision[1]} meet at {report.collision[2]}"
            if report.collision
            else f"element {report.df.element} covered {report.df.count} times"
        )
        raise ValueError(f"cannot anchor a non-Banff family: {detail}")
    g = family.group
    base_design = develop(family)
    anchors = []
    for _ in family.base_blocks:
        for a in g.elements():
            anchors.append(g.index(a))
    return apply_nesting(base_design, anchors)


@dataclass(frozen=True)
class DfSearchResult:
    """Backtracking search outcome: found, exhausted, or out of budget."""

    outcome: str  # "found" | "exhausted" | "budget"
    family: DifferenceFamily | None
    nodes: int


def _df_search_iter(
    group: AbelianGroup,
    k: int,
    lam: int,
    node_budget: int,
    stats: dict[str, int] | None = None,
) -> Iterator[DifferenceFamily | None]:
    """Yield difference families; a final None signals budget exhaustion.

    Every base block is normalized to contain 0 (per-block translation does
    not change its differences) and blocks are chosen in nondecreasing
    candidate order, so the enumeration is complete up to those symmetries.
    """
    v = group.order
    zero = group.zero()
    nonzero = [el for el in group.elements() if el != zero]
    target_blocks = lam * (v - 1) // (k * (k - 1))

    from itertools import combinations

    candidates: list[tuple[tuple[Element, ...], Counter[Element]]] = []
    for combo in combinations(nonzero, k - 1):
        block = (zero,) + combo
        deltas: Counter[Element] = Counter()
        for f in block:
            for fp in block:
                if f != fp:
                    deltas[group.sub(f, fp)] += 1
        if all(c <= lam for c in deltas.values()):
            candidates.append((block, deltas))

    coverage: Counter[Element] = Counter()
    chosen: list[int] = []
    nodes = 0
    over_budget = False

    def fits(deltas: Counter[Element]) -> bool:
        return all(coverage[el] + c <= lam for el, c in deltas.items())

    def rec(start: int, remaining: int) -> Iterator[DifferenceFamily]:
        nonlocal nodes, over_budget
        if remaining == 0:
            # coverage never exceeds lam, and total difference count matches,
            # so full coverage is automatic; verify anyway before yielding
            family = DifferenceFamily(
                group,
                tuple(GroupSubset(group, candidates[i][0]) for i in chosen),
                lam,
                k,
            )
            if verify_df(family).ok:
                if stats is not None:
                    stats["nodes"] = nodes
                yield family
            return
        for i in range(start, len(candidates)):
            if over_budget:
                return
            nodes += 1
            if nodes > node_budget:
                over_budget = True
                return
            block, deltas = candidates[i]
            if not fits(deltas):
                continue
            coverage.update(deltas)
            chosen.append(i)
            yield from rec(i, remaining - 1)
            chosen.pop()
            coverage.subtract(deltas)

    yield from rec(0, target_blocks)
    if stats is not None:
        stats["nodes"] = nodes
    if over_budget:
        yield None


def search_df(
    group: AbelianGroup, k: int, lam: int, node_budget: int = 2_000_000
) -> DfSearchResult:
    """Backtracking search for a (G,k,lam)-difference family.

    Deterministic for a fixed budget. Requires the counting precondition
    lam*(|G|-1) = 0 (mod k*(k-1)). "exhausted" is a proof that no family
    exists; "budget" is not.
    """
    v = group.order
    if k < 2 or k > v:
        raise ValueError(f"need 2 <= k <= |G|, got k={k}, |G|={v}")
    if lam < 1:
        raise ValueError("lam must be positive")
    if (lam * (v - 1)) % (k * (k - 1)) != 0:
        raise ValueError(
            f"no ({group},{k},{lam}) difference family can exist: "
            f"lam*(|G|-1) = {lam * (v - 1)} is not divisible by k*(k-1) = {k * (k - 1)}"
        )
    stats: dict[str, int] = {"nodes": 0}
    for item in _df_search_iter(group, k, lam, node_budget, stats):
        if item is None:
            return DfSearchResult(outcome="budget", family=None, nodes=node_budget)
        return DfSearchResult(outcome="found", family=item, nodes=stats["nodes"])
    return DfSearchResult(outcome="exhausted", family=None, nodes=stats["nodes"])


def enumerate_dfs(
    group: AbelianGroup, k: int, lam: int, limit: int, node_budget: int = 2_000_000
) -> list[DifferenceFamily]:
    """Up to `limit` distinct normalized difference families, for experiments."""
    out: list[DifferenceFamily] = []
    for item in _df_search_iter(group, k, lam, node_budget):
        if item is None:
            break
        out.append(item)
        if len(out) >= limit:
            break
    return out


@dataclass(frozen=True)
class DfToBdfResult:
    """Translation search outcome.

    When the solver's outcome is "nonexistent", that only proves no choice
    of translations of these particular base blocks is Banff; it says
    nothing about other (G,k,lam)-BDFs existing.
    """

    family: DifferenceFamily | None
    translations: tuple[Element, ...] | None
    solve: matching.SolveResult

    @property
    def found(self) -> bool:
        return self.family is not None


def df_to_bdf(
    family: DifferenceFamily, cfg: matching.SolverConfig | None = None
) -> DfToBdfResult:
    """Replace each base block by a translate so the family becomes Banff.

    Builds the translation hypergraph and hands it to the matching solver;
    a matching decodes directly into the translated family, which is then
    re-verified (translation keeps the difference multiset, so the DF
    property is preserved automatically).
    """
    h = hg.build_bdf_hypergraph(family)
    result = matching.solve(h, cfg)
    if result.matching is None:
        return DfToBdfResult(family=None, translations=None, solve=result)
    shifts: dict[int, Element] = {}
    for ei in result.matching.edge_indices:
        bi, a = h.edges[ei].payload
        shifts[bi] = a
    translations = tuple(shifts[i] for i in range(len(family.base_blocks)))
    moved = DifferenceFamily(
        family.group,
        tuple(translate(b, a) for b, a in zip(family.base_blocks, translations)),
        family.lam,
        family.k,
    )
    report = verify_bdf(moved)
    if not report.ok:
        raise AssertionError("matching decoded into a non-Banff family")
    return DfToBdfResult(family=moved, translations=translations, solve=result)
