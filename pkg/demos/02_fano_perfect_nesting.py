"""Perfect nesting of the Fano plane, found by hypergraph matching.

A nesting attaches one extra point to every block so that the enlarged
blocks still form a packing with pair index lam+1; it is perfect when that
packing is a full BIBD. Nestings correspond exactly to A-perfect matchings
of an auxiliary hypergraph: one A-vertex per block, one right vertex per
point pair, one edge per (block, outside point) choice.

They also correspond to harmonious v-colorings of the design's Levi graph,
and perfect nestings to exact colorings. Both equivalences are checked here
on STS(7).
"""

from nestkit import (
    Design,
    SolverConfig,
    apply_nesting,
    build_nesting_hypergraph,
    coloring_to_nesting,
    degree_report,
    is_perfect_nesting,
    levi_graph,
    nesting_to_coloring,
    solve,
    verify_bibd,
    verify_exact,
    verify_harmonious,
)


def main() -> None:
    fano = Design(7, 3, 1, tuple(
        tuple(sorted(((0 + g) % 7, (1 + g) % 7, (3 + g) % 7))) for g in range(7)
    ))
    print("Fano plane blocks:", fano.blocks)

    hyper = build_nesting_hypergraph(fano)
    rep = degree_report(hyper)
    print(f"\nauxiliary hypergraph: {hyper.n_left} blocks x {hyper.n_right} pairs, "
          f"{rep.n_edges} edges")
    print(f"block degrees {rep.a_min}..{rep.a_max} (v-k = 4), "
          f"pair degrees {rep.right_min}..{rep.right_max} (2*lam*(v-k)/(k-1) = 4)")

    result = solve(hyper, SolverConfig(mode="exact"))
    print(f"\nexact solver: {result.outcome} after {result.nodes} nodes")
    anchors = {}
    for ei in result.matching.edge_indices:
        block_index, point = hyper.edges[ei].payload
        anchors[block_index] = point
    cert = apply_nesting(fano, anchors)
    print("anchors:", cert.anchors)
    print("nested design parameters:",
          (cert.nested.v, cert.nested.k, cert.nested.lam))
    print("nested is a BIBD (perfect nesting):", is_perfect_nesting(cert))
    print("every pair covered exactly twice:", verify_bibd(cert.nested).ok)

    coloring = nesting_to_coloring(cert)
    graph = levi_graph(fano)
    print(f"\nLevi graph: {len(graph.edges)} edges, coloring with "
          f"{coloring.n_colors} colors")
    print("harmonious:", verify_harmonious(graph, coloring))
    print("exact (each color pair on exactly one edge):",
          verify_exact(graph, coloring))
    print("coloring decodes back to the same nesting:",
          coloring_to_nesting(fano, coloring) == cert)


if __name__ == "__main__":
    main()
