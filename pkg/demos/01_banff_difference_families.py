"""Banff difference families and anchored development.

A (G,k,lam)-difference family lists base blocks whose internal differences
cover every nonzero group element exactly lam times. It is a Banff family
when the base blocks and their negatives are pairwise disjoint, and then
developing it through the group and anchoring each translate F+g at the
point g produces a nested (|G|, k+1, lam+1)-packing.

This walkthrough replays the classic (Z13,3,1) example.
"""

from nestkit import (
    DifferenceFamily,
    delta_list,
    develop,
    develop_with_anchor,
    negate,
    pair_coverage,
    parse_group_spec,
    verify_bdf,
    verify_bibd,
    verify_df,
    verify_packing,
)


def main() -> None:
    group = parse_group_spec("Z13")
    family = DifferenceFamily(group, [[7, 8, 11], [4, 10, 12]], lam=1)
    print(f"group {group}, base blocks {[b.elements for b in family.base_blocks]}")

    deltas = delta_list(family)
    print("difference multiset:", sorted(x[0] for x in deltas.elements()))
    print("verify_df:", verify_df(family).ok)

    for i, block in enumerate(family.base_blocks):
        print(f"  -F{i} =", [e[0] for e in negate(block).elements])
    print("verify_bdf:", verify_bdf(family).ok)

    design = develop(family)
    print(f"\ndeveloped design: v={design.v} k={design.k} lam={design.lam} "
          f"blocks={design.block_count}")
    print("is a BIBD:", verify_bibd(design).ok)

    cert = develop_with_anchor(family)
    nested = cert.nested
    print(f"\nanchored development: v={nested.v} k={nested.k} lam={nested.lam} "
          f"blocks={nested.block_count}")
    print("packing check:", verify_packing(nested).ok)
    cov = pair_coverage(nested)
    print("largest pair count:", int(cov.counts.max()), "(allowed: 2)")
    print("\nfirst three nested blocks with their anchors:")
    for i in range(3):
        print(f"  {cert.base.blocks[i]} + anchor {cert.anchors[i]} -> {nested.blocks[i]}")


if __name__ == "__main__":
    main()
