"""Exact solvers for the covering problems the reductions start from.

DOMINATING SET, HITTING SET (plus the restricted-instance validity
predicate), and EXACT COVER BY THREE-SETS, all solved by exhaustive
enumeration with deterministic smallest-then-lexicographic witnesses.
They only need to be correct at small sizes; no heuristics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class InstanceError(ValueError):
    """Malformed graph or set system."""


@dataclass(frozen=True)
class Graph:
    """Undirected graph without loops or multiple edges on 0..n-1."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise InstanceError("vertex count must be >= 0")
        for u, v in self.edges:
            if u == v:
                raise InstanceError(f"loop at vertex {u}")
            if u > v:
                raise InstanceError(f"edge ({u},{v}) not normalized as (min,max)")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InstanceError(f"edge ({u},{v}) out of range")

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


def graph(vertex_count: int, edges=()) -> Graph:
    """Constructor normalizing edge direction and deduplicating."""
    return Graph(
        vertex_count,
        frozenset((min(u, v), max(u, v)) for u, v in edges),
    )


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """N[v] = {v} plus all neighbors of v."""
    if not 0 <= v < g.vertex_count:
        raise InstanceError(f"vertex {v} out of range")
    out = {v}
    for a, b in g.edges:
        if a == v:
            out.add(b)
        elif b == v:
            out.add(a)
    return frozenset(out)


def solve_dominating_set(g: Graph, k: int) -> frozenset[int] | None:
    """Smallest-then-lexicographic dominating set of size <= k, if any."""
    if not 0 <= k <= g.vertex_count:
        raise InstanceError(f"k={k} out of range 0..{g.vertex_count}")
    everyone = frozenset(range(g.vertex_count))
    hoods = [closed_neighborhood(g, v) for v in range(g.vertex_count)]
    for size in range(k + 1):
        for subset in itertools.combinations(range(g.vertex_count), size):
            covered = frozenset().union(*(hoods[v] for v in subset)) if subset else frozenset()
            if covered == everyone:
                return frozenset(subset)
    return None


@dataclass(frozen=True)
class SetSystem:
    """A base set 0..base_size-1 plus a list of subsets (duplicates allowed)."""

    base_size: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        for s in self.subsets:
            if not s:
                raise InstanceError("subsets must be nonempty")
            if not all(0 <= x < self.base_size for x in s):
                raise InstanceError(f"subset {sorted(s)} out of range")


def set_system(base_size: int, subsets) -> SetSystem:
    return SetSystem(base_size, tuple(frozenset(s) for s in subsets))


def is_valid_rhs(system: SetSystem, k: int) -> bool:
    """Restricted-instance validity: n > m > k > 1."""
    return len(system.subsets) > system.base_size > k > 1


def is_valid_x3c(system: SetSystem) -> bool:
    """Base size 3m with m > 1 and every subset of size exactly 3."""
    m3 = system.base_size
    return m3 % 3 == 0 and m3 >= 6 and all(len(s) == 3 for s in system.subsets)


def solve_hitting_set(system: SetSystem, k: int) -> frozenset[int] | None:
    """Smallest-then-lexicographic hitting set of size <= k, if any."""
    if k < 0:
        raise InstanceError("k must be >= 0")
    k = min(k, system.base_size)
    for size in range(k + 1):
        for subset in itertools.combinations(range(system.base_size), size):
            chosen = frozenset(subset)
            if all(chosen & s for s in system.subsets):
                return chosen
    return None


def solve_x3c(system: SetSystem) -> frozenset[int] | None:
    """Index set of a subcollection partitioning the base, if any.

    The witness has exactly base_size/3 members; indices are enumerated
    smallest-first so the witness is deterministic.
    """
    if not is_valid_x3c(system):
        raise InstanceError("not a valid exact-cover-by-three-sets instance")
    want = system.base_size // 3
    everyone = frozenset(range(system.base_size))
    for indices in itertools.combinations(range(len(system.subsets)), want):
        union = frozenset().union(*(system.subsets[i] for i in indices))
        if union == everyone:
            return frozenset(indices)
    return None
