"""Bipartite uniform multi-hypergraphs and the three auxiliary constructions.

Every edge contains exactly one left (A-side) vertex and k right vertices,
so the edges are (k+1)-uniform. Right vertices are indexed densely in
lexicographic label order, which keeps degree bookkeeping array-friendly.
Edges carry a (block index, translation) payload so a matching decodes into
blocks without any search. Multi-edges are preserved: repeated base blocks
get distinct A-vertices and hence distinct edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .designs import Block, Design, verify_bibd
from .groups import negate, translate

if TYPE_CHECKING:
    from .diff_families import DifferenceFamily

Vertex = tuple[str, int]  # ("A", i) or ("R", j)


@dataclass(frozen=True)
class Edge:
    """One hyperedge: a left vertex index plus k right vertex indices."""

    left: int
    right: tuple[int, ...]
    payload: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "right", tuple(sorted(int(j) for j in self.right)))


@dataclass(frozen=True)
class BipartiteHypergraph:
    """Bipartite (k+1)-uniform multi-hypergraph with parts A and R."""

    k: int
    left_labels: tuple
    right_labels: tuple
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"edges need k >= 1 right vertices, got k={self.k}")
        n_left, n_right = len(self.left_labels), len(self.right_labels)
        for ei, e in enumerate(self.edges):
            if not 0 <= e.left < n_left:
                raise ValueError(f"edge {ei} has left vertex {e.left} out of range")
            if len(e.right) != self.k or len(set(e.right)) != self.k:
                raise ValueError(
                    f"edge {ei} needs {self.k} distinct right vertices, got {e.right}"
                )
            if e.right and (e.right[0] < 0 or e.right[-1] >= n_right):
                raise ValueError(f"edge {ei} leaves the right index range: {e.right}")

    @property
    def n_left(self) -> int:
        return len(self.left_labels)

    @property
    def n_right(self) -> int:
        return len(self.right_labels)


@dataclass(frozen=True)
class Matching:
    """A set of edge indices; validity against a hypergraph is checked by
    matching.verify_matching."""

    edge_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = tuple(sorted(int(i) for i in self.edge_indices))
        if len(set(idx)) != len(idx):
            raise ValueError("matching repeats an edge index")
        object.__setattr__(self, "edge_indices", idx)

    def __len__(self) -> int:
        return len(self.edge_indices)


def _check_vertex(h: BipartiteHypergraph, vertex: Vertex) -> Vertex:
    side, idx = vertex
    if side == "A":
        if not 0 <= idx < h.n_left:
            raise ValueError(f"unknown A vertex index {idx}")
    elif side == "R":
        if not 0 <= idx < h.n_right:
            raise ValueError(f"unknown R vertex index {idx}")
    else:
        raise ValueError(f"vertex side must be 'A' or 'R', got {side!r}")
    return (side, idx)


def degree(h: BipartiteHypergraph, vertex: Vertex) -> int:
    """Number of edges containing the vertex."""
    side, idx = _check_vertex(h, vertex)
    if side == "A":
        return sum(1 for e in h.edges if e.left == idx)
    return sum(1 for e in h.edges if idx in e.right)


def codegree(h: BipartiteHypergraph, u: Vertex, w: Vertex) -> int:
    """Number of edges containing both of two distinct vertices."""
    u = _check_vertex(h, u)
    w = _check_vertex(h, w)
    if u == w:
        raise ValueError("codegree is defined for distinct vertices")

    def has(e: Edge, vert: Vertex) -> bool:
        side, idx = vert
        return e.left == idx if side == "A" else idx in e.right

    return sum(1 for e in h.edges if has(e, u) and has(e, w))


def left_degrees(h: BipartiteHypergraph) -> np.ndarray:
    lefts = np.fromiter((e.left for e in h.edges), dtype=np.int64, count=len(h.edges))
    return np.bincount(lefts, minlength=h.n_left)


def right_degrees(h: BipartiteHypergraph) -> np.ndarray:
    rights = np.fromiter(
        (j for e in h.edges for j in e.right),
        dtype=np.int64,
        count=len(h.edges) * h.k,
    )
    return np.bincount(rights, minlength=h.n_right)


def codegree_table(h: BipartiteHypergraph) -> dict[tuple[Vertex, Vertex], int]:
    """All nonzero codegrees, keyed by sorted vertex pair."""
    table: dict[tuple[Vertex, Vertex], int] = {}
    for e in h.edges:
        verts: list[Vertex] = [("A", e.left)] + [("R", j) for j in e.right]
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                key = (verts[i], verts[j])
                table[key] = table.get(key, 0) + 1
    return table


@dataclass(frozen=True)
class DegreeReport:
    """Min/max degrees per part plus the overall maximum codegree."""

    n_edges: int
    a_min: int | None
    a_max: int | None
    right_min: int | None
    right_max: int | None
    max_codegree: int


def degree_report(h: BipartiteHypergraph) -> DegreeReport:
    a_deg = left_degrees(h)
    r_deg = right_degrees(h)
    table = codegree_table(h)
    return DegreeReport(
        n_edges=len(h.edges),
        a_min=int(a_deg.min()) if h.n_left else None,
        a_max=int(a_deg.max()) if h.n_left else None,
        right_min=int(r_deg.min()) if h.n_right else None,
        right_max=int(r_deg.max()) if h.n_right else None,
        max_codegree=max(table.values(), default=0),
    )


def dump_edges(h: BipartiteHypergraph) -> str:
    """One edge per line: "A-id : right-id,right-id,... # payload"."""
    lines = []
    for e in h.edges:
        rights = ",".join(str(j) for j in e.right)
        lines.append(f"{e.left} : {rights} # {e.payload!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def build_nesting_hypergraph(design: Design) -> BipartiteHypergraph:
    """Auxiliary hypergraph whose A-perfect matchings are nestings.

    A-vertices are the block instances; right vertices are all point pairs.
    Each (block B, point a outside B) gives one edge joining B to the k pairs
    {a, b} for b in B. For a (v,k,lam)-BIBD every block then has degree v-k
    and every pair degree 2*lam*(v-k)/(k-1); a block and a pair share at most
    one edge, two pairs share at most lam (and none when disjoint).
    """
    report = verify_bibd(design)
    if not report.ok:
        raise ValueError(
            f"nesting hypergraph needs a BIBD: pair {report.witness_pair} "
            f"is covered {report.witness_count} times, not {design.lam}"
        )
    v = design.v
    pairs = [(p, q) for p in range(v) for q in range(p + 1, v)]
    pair_index = {pq: j for j, pq in enumerate(pairs)}
    edges = []
    for bi, block in enumerate(design.blocks):
        members = set(block)
        for a in range(v):
            if a in members:
                continue
            right = tuple(
                pair_index[(a, b) if a < b else (b, a)] for b in block
            )
            edges.append(Edge(left=bi, right=right, payload=(bi, a)))
    return BipartiteHypergraph(
        k=design.k,
        left_labels=design.blocks,
        right_labels=tuple(pairs),
        edges=tuple(edges),
    )


def build_bdf_hypergraph(family: "DifferenceFamily") -> BipartiteHypergraph:
    """Auxiliary hypergraph whose A-perfect matchings pick translations that
    turn a difference family into a Banff difference family.

    A-vertices are the base blocks; right vertices are the unordered pairs
    {x, -x} over nonzero non-involution elements. Each (B, a) with the
    translate B+a disjoint from its own negative gives one edge joining B to
    the k pairs {b+a, -(b+a)}. Over a group with at most C involutions each
    block keeps degree at least |G| - 2^C * k^2.
    """
    from .diff_families import verify_df

    report = verify_df(family)
    if not report.ok:
        raise ValueError(
            f"BDF hypergraph needs a valid difference family: element "
            f"{report.element} is covered {report.count} times, not {family.lam}"
        )
    group = family.group
    pair_index: dict[tuple[int, ...], int] = {}
    pair_labels = []
    for x in group.elements():
        nx = group.neg(x)
        if x == group.zero() or nx == x:
            continue
        if x < nx:
            pair_index[x] = len(pair_labels)
            pair_index[nx] = len(pair_labels)
            pair_labels.append((x, nx))
    edges = []
    for bi, base in enumerate(family.base_blocks):
        for a in group.elements():
            shifted = translate(base, a)
            neg_shifted = set(negate(shifted).elements)
            if neg_shifted & set(shifted.elements):
                continue
            right = tuple(pair_index[el] for el in shifted)
            edges.append(Edge(left=bi, right=right, payload=(bi, a)))
    return BipartiteHypergraph(
        k=family.k,
        left_labels=tuple(b.elements for b in family.base_blocks),
        right_labels=tuple(pair_labels),
        edges=tuple(edges),
    )


def _cyclic_stabilizer_size(block: Block, v: int) -> int:
    members = frozenset(block)
    return sum(
        1 for a in range(v) if frozenset((b + a) % v for b in block) == members
    )


def build_novak_hypergraph(
    v: int,
    full_orbit_bases: Sequence[Block],
    forbidden: Iterable[int] = (),
    k: int | None = None,
) -> BipartiteHypergraph:
    """Auxiliary hypergraph whose A-perfect matchings select pairwise disjoint
    translates, one per full orbit, all avoiding the forbidden point set.

    A-vertices are the full-orbit base blocks; right vertices are the points
    of Z_v outside the forbidden set T. Each (B, a) with B+a avoiding T gives
    one edge joining B to the k points of B+a, so every base keeps degree at
    least v - k*|T|.
    """
    t_set = frozenset(int(x) % v for x in forbidden)
    bases = [tuple(sorted(int(x) % v for x in b)) for b in full_orbit_bases]
    if k is None:
        if not bases:
            raise ValueError("k must be given when there are no base blocks")
        k = len(bases[0])
    for bi, base in enumerate(bases):
        if len(set(base)) != len(base) or (k and len(base) != k):
            raise ValueError(f"base block {bi} is not a {k}-subset of Z_{v}: {base}")
        if _cyclic_stabilizer_size(base, v) != 1:
            raise ValueError(f"base block {bi} has a short orbit: {base}")
    points = tuple(x for x in range(v) if x not in t_set)
    point_index = {x: j for j, x in enumerate(points)}
    edges = []
    for bi, base in enumerate(bases):
        for a in range(v):
            shifted = [(b + a) % v for b in base]
            if any(x in t_set for x in shifted):
                continue
            right = tuple(point_index[x] for x in shifted)
            edges.append(Edge(left=bi, right=right, payload=(bi, a)))
    return BipartiteHypergraph(
        k=k,
        left_labels=tuple(bases),
        right_labels=points,
        edges=tuple(edges),
    )


@dataclass(frozen=True)
class DpHypothesisReport:
    """Diagnostic evaluation of the degree/codegree sufficient condition for
    A-perfect matchings: min A-degree >= (1 + D^-alpha) * D, max right degree
    <= D, max codegree <= D^(1-beta).

    The condition is asymptotic; small instances routinely fail it while
    still having matchings, so nothing here ever gates a solver.
    """

    D: float
    alpha: float
    beta: float
    min_a_degree: int | None
    max_right_degree: int | None
    max_codegree: int
    a_degree_threshold: float
    codegree_threshold: float
    a_degree_ok: bool
    right_degree_ok: bool
    codegree_ok: bool

    @property
    def ok(self) -> bool:
        return self.a_degree_ok and self.right_degree_ok and self.codegree_ok


def dp_hypothesis_check(
    h: BipartiteHypergraph, D: float, alpha: float, beta: float
) -> DpHypothesisReport:
    """Evaluate the three matching-theorem hypotheses for the given (D, alpha,
    beta). Empty parts pass vacuously."""
    if D <= 0 or alpha <= 0 or beta <= 0:
        raise ValueError("D, alpha and beta must all be positive")
    rep = degree_report(h)
    a_threshold = (1.0 + D ** (-alpha)) * D
    co_threshold = D ** (1.0 - beta)
    a_ok = rep.a_min is None or rep.a_min >= a_threshold
    r_ok = rep.right_max is None or rep.right_max <= D
    co_ok = rep.max_codegree <= co_threshold
    return DpHypothesisReport(
        D=D,
        alpha=alpha,
        beta=beta,
        min_a_degree=rep.a_min,
        max_right_degree=rep.right_max,
        max_codegree=rep.max_codegree,
        a_degree_threshold=a_threshold,
        codegree_threshold=co_threshold,
        a_degree_ok=a_ok,
        right_degree_ok=r_ok,
        codegree_ok=co_ok,
    )
