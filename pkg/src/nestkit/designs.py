"""Block designs, packings, nestings, Levi graphs and harmonious colorings.

Points are always 0..v-1. Block lists are multisets: order is preserved and
repeated blocks are allowed, since designs with pair index above 1 may
legitimately contain a block twice. Every type here is immutable and every
operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

Block = tuple[int, ...]


def _canonical_block(raw: Iterable[int], v: int, k: int, where: str) -> Block:
    block = tuple(sorted(int(x) for x in raw))
    if len(block) != k:
        raise ValueError(f"{where} has {len(block)} entries, expected k={k}")
    if len(set(block)) != k:
        raise ValueError(f"{where} repeats a point: {block}")
    if block and (block[0] < 0 or block[-1] >= v):
        raise ValueError(f"{where} leaves the point range [0, {v}): {block}")
    return block


@dataclass(frozen=True)
class Design:
    """A (v, k, lam) block structure over points 0..v-1.

    Blocks are stored sorted ascending; the list itself keeps its order.
    lam = 0 is allowed only as the degenerate index of an empty design.
    """

    v: int
    k: int
    lam: int
    blocks: tuple[Block, ...] = ()

    def __post_init__(self) -> None:
        if self.v < 1:
            raise ValueError(f"v must be positive, got {self.v}")
        if not 1 <= self.k <= self.v:
            raise ValueError(f"k must satisfy 1 <= k <= v, got k={self.k}, v={self.v}")
        if self.lam < 0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")
        blocks = tuple(
            _canonical_block(b, self.v, self.k, f"block {i}")
            for i, b in enumerate(self.blocks)
        )
        object.__setattr__(self, "blocks", blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)


def expected_bibd_block_count(v: int, k: int, lam: int) -> int:
    """lam * v(v-1) / (k(k-1)), the forced block count of a (v,k,lam)-BIBD."""
    if k < 2:
        raise ValueError("block count formula needs k >= 2")
    num = lam * v * (v - 1)
    den = k * (k - 1)
    if num % den:
        raise ValueError(f"({v},{k},{lam}) fails the block-count divisibility")
    return num // den


@dataclass(frozen=True)
class PairCoverage:
    """Symmetric table of how many blocks contain each unordered point pair."""

    counts: np.ndarray

    def __post_init__(self) -> None:
        self.counts.setflags(write=False)

    @property
    def v(self) -> int:
        return self.counts.shape[0]

    def count(self, p: int, q: int) -> int:
        if p == q:
            raise ValueError("pair coverage is defined for distinct points")
        return int(self.counts[p, q])


def pair_coverage(design: Design) -> PairCoverage:
    """Count, for every unordered pair, the blocks containing both points."""
    counts = np.zeros((design.v, design.v), dtype=np.int64)
    for block in design.blocks:
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                p, q = block[i], block[j]
                counts[p, q] += 1
                counts[q, p] += 1
    return PairCoverage(counts)


@dataclass(frozen=True)
class PackingReport:
    """Outcome of a packing check, carrying a maximal-coverage witness pair."""

    ok: bool
    lam: int
    worst_pair: tuple[int, int] | None
    worst_count: int

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class BibdReport:
    """Outcome of an exact-coverage check; witness is the first bad pair."""

    ok: bool
    lam: int
    witness_pair: tuple[int, int] | None
    witness_count: int | None

    def __bool__(self) -> bool:
        return self.ok


def _upper_pairs(v: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(v, k=1)


def verify_packing(design: Design) -> PackingReport:
    """Check that no point pair is covered more than lam times."""
    if design.v < 2:
        return PackingReport(ok=True, lam=design.lam, worst_pair=None, worst_count=0)
    cov = pair_coverage(design)
    rows, cols = _upper_pairs(design.v)
    vals = cov.counts[rows, cols]
    at = int(np.argmax(vals))
    worst = (int(rows[at]), int(cols[at]))
    worst_count = int(vals[at])
    return PackingReport(
        ok=worst_count <= design.lam,
        lam=design.lam,
        worst_pair=worst,
        worst_count=worst_count,
    )


def verify_bibd(design: Design) -> BibdReport:
    """Check that every point pair is covered exactly lam times."""
    if design.v < 2:
        return BibdReport(ok=True, lam=design.lam, witness_pair=None, witness_count=None)
    cov = pair_coverage(design)
    rows, cols = _upper_pairs(design.v)
    vals = cov.counts[rows, cols]
    bad = np.flatnonzero(vals != design.lam)
    if bad.size == 0:
        return BibdReport(ok=True, lam=design.lam, witness_pair=None, witness_count=None)
    at = int(bad[0])
    return BibdReport(
        ok=False,
        lam=design.lam,
        witness_pair=(int(rows[at]), int(cols[at])),
        witness_count=int(vals[at]),
    )


@dataclass(frozen=True)
class NestingCertificate:
    """A design, one anchor point per block, and the resulting nested design.

    The nested design adds each block's anchor to it, raising the block size
    and the pair index by one. apply_nesting is the validating constructor;
    building the dataclass directly only checks the structural glue.
    """

    base: Design
    anchors: tuple[int, ...]
    nested: Design

    def __post_init__(self) -> None:
        base, nested = self.base, self.nested
        anchors = tuple(int(a) for a in self.anchors)
        object.__setattr__(self, "anchors", anchors)
        if len(anchors) != base.block_count:
            raise ValueError(
                f"{len(anchors)} anchors for {base.block_count} blocks"
            )
        if (nested.v, nested.k, nested.lam) != (base.v, base.k + 1, base.lam + 1):
            raise ValueError("nested design parameters do not extend the base's")
        for i, (block, a) in enumerate(zip(base.blocks, anchors)):
            if not 0 <= a < base.v:
                raise ValueError(f"anchor {a} of block {i} is out of range")
            if a in block:
                raise ValueError(f"anchor {a} of block {i} lies inside the block")
            if nested.blocks[i] != tuple(sorted(block + (a,))):
                raise ValueError(f"nested block {i} is not base block {i} plus its anchor")


def apply_nesting(
    design: Design, anchors: Sequence[int] | Mapping[int, int]
) -> NestingCertificate:
    """Attach one anchor point to each block and verify the result packs.

    anchors maps block index to a point outside that block. Raises if any
    anchor sits inside its block or if the anchored blocks fail to form a
    (v, k+1, lam+1)-packing; the error names the violating pair.
    """
    if isinstance(anchors, Mapping):
        missing = [i for i in range(design.block_count) if i not in anchors]
        if missing:
            raise ValueError(f"anchors missing for block indices {missing}")
        anchor_list = tuple(int(anchors[i]) for i in range(design.block_count))
    else:
        anchor_list = tuple(int(a) for a in anchors)
    nested = Design(
        v=design.v,
        k=design.k + 1,
        lam=design.lam + 1,
        blocks=tuple(
            block + (a,) for block, a in zip(design.blocks, anchor_list)
        ),
    )
    cert = NestingCertificate(base=design, anchors=anchor_list, nested=nested)
    report = verify_packing(nested)
    if not report.ok:
        raise ValueError(
            f"anchored blocks are not a ({design.v},{design.k + 1},{design.lam + 1})"
            f"-packing: pair {report.worst_pair} is covered {report.worst_count} times"
        )
    return cert


def is_perfect_nesting(cert: NestingCertificate) -> bool:
    """True when the nested design is a full BIBD, not merely a packing.

    Recomputed from the pair coverage rather than inferred from the k and lam
    arithmetic, as defense in depth.
    """
    return verify_bibd(cert.nested).ok


@dataclass(frozen=True)
class NestingConditionsReport:
    """Necessary-condition checks for a (perfect) nesting to exist."""

    ok: bool
    checks: tuple[tuple[str, bool], ...]

    @property
    def failing(self) -> tuple[str, ...]:
        return tuple(name for name, passed in self.checks if not passed)

    def __bool__(self) -> bool:
        return self.ok


def nesting_necessary_conditions(
    v: int, k: int, lam: int, perfect: bool = False
) -> NestingConditionsReport:
    """Arithmetic preconditions: k >= 2*lam+1 for a nesting; for a perfect
    nesting additionally k = 2*lam+1 and v = 1 (mod 2k)."""
    if v < 1 or k < 1 or lam < 1:
        raise ValueError("v, k and lam must be positive")
    checks: list[tuple[str, bool]] = [(f"k >= 2*lam + 1 ({k} >= {2 * lam + 1})", k >= 2 * lam + 1)]
    if perfect:
        checks.append((f"k == 2*lam + 1 ({k} == {2 * lam + 1})", k == 2 * lam + 1))
        checks.append((f"v == 1 (mod 2k) ({v} mod {2 * k} == 1)", v % (2 * k) == 1))
    return NestingConditionsReport(ok=all(p for _, p in checks), checks=tuple(checks))


@dataclass(frozen=True)
class LeviGraph:
    """Bipartite incidence graph: point vertices vs block-instance vertices."""

    v: int
    n_blocks: int
    edges: tuple[tuple[int, int], ...]  # (point, block index)


def levi_graph(design: Design) -> LeviGraph:
    """Incidence graph with one edge per (point in block) incidence."""
    edges = tuple(
        (x, bi) for bi, block in enumerate(design.blocks) for x in block
    )
    return LeviGraph(v=design.v, n_blocks=design.block_count, edges=edges)


def point_degrees(graph: LeviGraph) -> np.ndarray:
    pts = np.fromiter((x for x, _ in graph.edges), dtype=np.int64, count=len(graph.edges))
    return np.bincount(pts, minlength=graph.v)


def block_degrees(graph: LeviGraph) -> np.ndarray:
    bls = np.fromiter((b for _, b in graph.edges), dtype=np.int64, count=len(graph.edges))
    return np.bincount(bls, minlength=graph.n_blocks)


@dataclass(frozen=True)
class Coloring:
    """Total color assignment on a Levi graph's vertices, colors in [0, c)."""

    point_colors: tuple[int, ...]
    block_colors: tuple[int, ...]

    def __post_init__(self) -> None:
        pc = tuple(int(c) for c in self.point_colors)
        bc = tuple(int(c) for c in self.block_colors)
        if any(c < 0 for c in pc + bc):
            raise ValueError("colors must be nonnegative integers")
        object.__setattr__(self, "point_colors", pc)
        object.__setattr__(self, "block_colors", bc)

    @property
    def n_colors(self) -> int:
        all_colors = self.point_colors + self.block_colors
        return max(all_colors) + 1 if all_colors else 0


def _check_total(graph: LeviGraph, coloring: Coloring) -> None:
    if len(coloring.point_colors) != graph.v or len(coloring.block_colors) != graph.n_blocks:
        raise ValueError(
            f"coloring covers {len(coloring.point_colors)} points and "
            f"{len(coloring.block_colors)} blocks, graph has {graph.v} and {graph.n_blocks}"
        )


def verify_harmonious(graph: LeviGraph, coloring: Coloring) -> bool:
    """Proper coloring in which no two edges share a color pair."""
    _check_total(graph, coloring)
    seen: set[tuple[int, int]] = set()
    for x, bi in graph.edges:
        cx = coloring.point_colors[x]
        cb = coloring.block_colors[bi]
        if cx == cb:
            return False
        pair = (cx, cb) if cx < cb else (cb, cx)
        if pair in seen:
            return False
        seen.add(pair)
    return True


def verify_exact(graph: LeviGraph, coloring: Coloring) -> bool:
    """Harmonious, and every unordered color pair appears on exactly one edge.

    Given distinct color pairs on the edges, exactness is equivalent to the
    edge count hitting c(c-1)/2 for c colors.
    """
    if not verify_harmonious(graph, coloring):
        return False
    c = coloring.n_colors
    return len(graph.edges) == c * (c - 1) // 2


def nesting_to_coloring(cert: NestingCertificate) -> Coloring:
    """Color point x with x and each block with its anchor's color."""
    return Coloring(
        point_colors=tuple(range(cert.base.v)),
        block_colors=cert.anchors,
    )


def coloring_to_nesting(design: Design, coloring: Coloring) -> NestingCertificate:
    """Recover the nesting from a harmonious v-coloring of the Levi graph.

    Requires all points distinctly colored with colors below v (so exactly v
    colors are in play); the anchor of a block is the unique point sharing
    its color. Fails if a block's color matches no point or the coloring is
    not harmonious.
    """
    graph = levi_graph(design)
    _check_total(graph, coloring)
    if len(set(coloring.point_colors)) != design.v:
        raise ValueError("points must receive pairwise distinct colors")
    point_of_color = {c: x for x, c in enumerate(coloring.point_colors)}
    anchors = []
    for bi, cb in enumerate(coloring.block_colors):
        if cb not in point_of_color:
            raise ValueError(f"block {bi} has color {cb}, which matches no point")
        anchors.append(point_of_color[cb])
    if not verify_harmonious(graph, coloring):
        raise ValueError("coloring is not harmonious on the Levi graph")
    return apply_nesting(design, anchors)


@dataclass(frozen=True)
class SubblockNesting:
    """Blocks of size k2, each with a distinguished subblock of size k1."""

    v: int
    k1: int
    lam1: int
    k2: int
    lam2: int
    blocks: tuple[tuple[Block, Block], ...]  # (outer, inner)

    def __post_init__(self) -> None:
        if not 1 <= self.k1 < self.k2 <= self.v:
            raise ValueError(
                f"need 1 <= k1 < k2 <= v, got k1={self.k1}, k2={self.k2}, v={self.v}"
            )
        canon = []
        for i, (outer, inner) in enumerate(self.blocks):
            outer = _canonical_block(outer, self.v, self.k2, f"outer block {i}")
            inner = _canonical_block(inner, self.v, self.k1, f"inner block {i}")
            if not set(inner) <= set(outer):
                raise ValueError(f"inner block {i} is not contained in its outer block")
            canon.append((outer, inner))
        object.__setattr__(self, "blocks", tuple(canon))


@dataclass(frozen=True)
class SubblockNestingReport:
    """The three checks behind a (k2,lam2; k1,lam1)-nesting claim."""

    ok: bool
    identity_ok: bool
    outer: BibdReport
    inner: BibdReport

    def __bool__(self) -> bool:
        return self.ok


def verify_subblock_nesting(nesting: SubblockNesting) -> SubblockNestingReport:
    """Outer blocks form a (v,k2,lam2)-BIBD, inner blocks a (v,k1,lam1)-BIBD,
    and lam1*k2*(k2-1) = lam2*k1*(k1-1)."""
    outer_design = Design(
        v=nesting.v,
        k=nesting.k2,
        lam=nesting.lam2,
        blocks=tuple(outer for outer, _ in nesting.blocks),
    )
    inner_design = Design(
        v=nesting.v,
        k=nesting.k1,
        lam=nesting.lam1,
        blocks=tuple(inner for _, inner in nesting.blocks),
    )
    outer_report = verify_bibd(outer_design)
    inner_report = verify_bibd(inner_design)
    identity_ok = (
        nesting.lam1 * nesting.k2 * (nesting.k2 - 1)
        == nesting.lam2 * nesting.k1 * (nesting.k1 - 1)
    )
    return SubblockNestingReport(
        ok=outer_report.ok and inner_report.ok and identity_ok,
        identity_ok=identity_ok,
        outer=outer_report,
        inner=inner_report,
    )


def alpha_beta(k1: int, lam1: int, k2: int, lam2: int) -> tuple[int, int]:
    """Divisibility constants of an admissible (k2,lam2; k1,lam1) family.

    alpha is the least t > 0 with t*lam1 = 0 (mod k1-1) and t*lam2 = 0
    (mod k2-1); beta is the least m > 0 with m*lam1 = 0 (mod k1*(k1-1)).
    Admissibility lam1*k2*(k2-1) = lam2*k1*(k1-1) is required.
    """
    if min(k1, lam1, k2, lam2) < 1 or k1 < 2 or k2 <= k1:
        raise ValueError("need 2 <= k1 < k2 and positive lam1, lam2")
    if lam1 * k2 * (k2 - 1) != lam2 * k1 * (k1 - 1):
        raise ValueError(
            f"inadmissible parameters: lam1*k2*(k2-1) = {lam1 * k2 * (k2 - 1)} "
            f"!= {lam2 * k1 * (k1 - 1)} = lam2*k1*(k1-1)"
        )
    a1 = (k1 - 1) // gcd(lam1, k1 - 1)
    a2 = (k2 - 1) // gcd(lam2, k2 - 1)
    alpha = lcm(a1, a2)
    beta = (k1 * (k1 - 1)) // gcd(lam1, k1 * (k1 - 1))
    return alpha, beta
