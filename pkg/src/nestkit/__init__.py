"""nestkit: nested block designs, Banff difference families, and disjoint
orbit representatives, built on bipartite hypergraph matching."""

from .designs import (
    Coloring,
    Design,
    LeviGraph,
    NestingCertificate,
    SubblockNesting,
    alpha_beta,
    apply_nesting,
    coloring_to_nesting,
    is_perfect_nesting,
    levi_graph,
    nesting_necessary_conditions,
    nesting_to_coloring,
    pair_coverage,
    verify_bibd,
    verify_exact,
    verify_harmonious,
    verify_packing,
    verify_subblock_nesting,
)
from .groups import (
    AbelianGroup,
    GroupSubset,
    bad_translations,
    blocking_translations,
    negate,
    order2_count,
    parse_group_spec,
    translate,
)
from .diff_families import (
    DifferenceFamily,
    delta_list,
    develop,
    develop_with_anchor,
    df_to_bdf,
    search_df,
    verify_bdf,
    verify_df,
)
from .hypergraph import (
    BipartiteHypergraph,
    Edge,
    Matching,
    build_bdf_hypergraph,
    build_nesting_hypergraph,
    build_novak_hypergraph,
    codegree,
    codegree_table,
    degree,
    degree_report,
    dp_hypothesis_check,
    dump_edges,
)
from .matching import (
    SolverConfig,
    SolveResult,
    brute_force_matching,
    solve,
    verify_matching,
)
from .cyclic import (
    CyclicBibd,
    Orbit,
    check_orbit_bounds,
    decompose_orbits,
    develop_cyclic,
    novak_select,
    place_short_orbits,
    verify_disjoint_selection,
)

__version__ = "0.1.0"
