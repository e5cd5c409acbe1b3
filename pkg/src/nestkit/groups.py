"""Finite abelian group arithmetic for direct sums of cyclic groups.

A group is described by the orders of its cyclic factors; an element is the
tuple of its residues. Rank-one groups accept bare ints wherever an element
is expected, so code working over Z_v can stay in plain integers at the call
site. All values are immutable and safe to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from typing import Iterable, Iterator

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Direct sum Z_{n1} + ... + Z_{nt} with the all-zero tuple as identity."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(int(n) for n in self.orders)
        if not orders:
            raise ValueError("a group needs at least one cyclic factor")
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def element(self, value: int | Iterable[int]) -> Element:
        """Canonicalize an int (rank one only) or residue tuple."""
        if isinstance(value, int):
            if self.rank != 1:
                raise ValueError(
                    f"bare int element only allowed for rank-1 groups, not {self}"
                )
            return (value % self.orders[0],)
        residues = tuple(int(x) for x in value)
        if len(residues) != self.rank:
            raise ValueError(
                f"element {residues} has {len(residues)} components, {self} needs {self.rank}"
            )
        return tuple(x % n for x, n in zip(residues, self.orders))

    def zero(self) -> Element:
        return (0,) * self.rank

    def add(self, g: int | Iterable[int], h: int | Iterable[int]) -> Element:
        a, b = self.element(g), self.element(h)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, g: int | Iterable[int]) -> Element:
        a = self.element(g)
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def sub(self, g: int | Iterable[int], h: int | Iterable[int]) -> Element:
        return self.add(g, self.neg(h))

    def elements(self) -> Iterator[Element]:
        """All elements in lexicographic residue order."""
        return product(*(range(n) for n in self.orders))

    def index(self, g: int | Iterable[int]) -> int:
        """Lexicographic rank of an element, the canonical point index."""
        a = self.element(g)
        idx = 0
        for x, n in zip(a, self.orders):
            idx = idx * n + x
        return idx

    def element_at(self, index: int) -> Element:
        """Inverse of index()."""
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range for {self}")
        residues = []
        for n in reversed(self.orders):
            residues.append(index % n)
            index //= n
        return tuple(reversed(residues))

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.orders)


def parse_group_spec(spec: str) -> AbelianGroup:
    """Parse a spec string like "Z13", "Z2xZ4" or "z3xz3xz7"."""
    parts = spec.strip().lower().split("x")
    orders = []
    for part in parts:
        m = re.fullmatch(r"z(\d+)", part.strip())
        if m is None:
            raise ValueError(
                f"bad group spec {spec!r}: expected forms like Z13 or Z2xZ4"
            )
        orders.append(int(m.group(1)))
    return AbelianGroup(tuple(orders))


@dataclass(frozen=True)
class GroupSubset:
    """A set of distinct group elements kept in lexicographic order."""

    group: AbelianGroup
    elements: tuple[Element, ...]

    def __init__(self, group: AbelianGroup, elements: Iterable[int | Iterable[int]]):
        canon = sorted(group.element(e) for e in elements)
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"subset elements must be distinct, {a} repeats")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "elements", tuple(canon))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, value: int | Iterable[int]) -> bool:
        return self.group.element(value) in set(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)


def _same_group(a: GroupSubset, b: GroupSubset) -> None:
    if a.group != b.group:
        raise ValueError(f"subsets live in different groups: {a.group} vs {b.group}")


def translate(subset: GroupSubset, a: int | Iterable[int]) -> GroupSubset:
    """The translated set {b + a : b in subset}."""
    g = subset.group
    shift = g.element(a)
    return GroupSubset(g, (g.add(b, shift) for b in subset))


def negate(subset: GroupSubset) -> GroupSubset:
    """The negated set {-b : b in subset}."""
    g = subset.group
    return GroupSubset(g, (g.neg(b) for b in subset))


def order2_count(group: AbelianGroup) -> int:
    """Number of involutions, elements x != 0 with x + x = 0.

    Equals prod(gcd(2, n_i)) - 1: each factor contributes its own 2-torsion.
    """
    return prod(gcd(2, n) for n in group.orders) - 1


def bad_translations(subset: GroupSubset) -> frozenset[Element]:
    """Translations a for which the translate meets its own negative.

    Returns the exact set {a : -(B+a) and (B+a) intersect}, equivalently the
    solutions of b1 + b2 + 2a = 0 over b1, b2 in B (b1 = b2 included). Its
    size never exceeds 2^C * k^2 where C is the involution count, since each
    of the k^2 pair sums admits at most 2^C solutions in a.
    """
    if len(subset) == 0:
        raise ValueError("bad_translations needs a nonempty subset")
    g = subset.group
    base = set(subset.elements)
    out = set()
    for a in g.elements():
        shifted = {g.add(b, a) for b in base}
        if any(g.neg(x) in shifted for x in shifted):
            out.add(a)
    return frozenset(out)


def blocking_translations(subset: GroupSubset, forbidden: GroupSubset) -> frozenset[Element]:
    """Translations a for which (B+a) meets the forbidden set X.

    Computed directly as {x - b : x in X, b in B}, so the size is at most
    |B| * |X|; when the group order exceeds that, some translation avoids X.
    """
    _same_group(subset, forbidden)
    g = subset.group
    return frozenset(g.sub(x, b) for x in forbidden for b in subset)
