"""Transversal matroids and the lifted graph G^k.

The lifted graph replaces every right vertex ``v`` by ``k`` copies
``v(1)..v(k)``; copy ``v(t)`` gets the dense index ``v*k + (t-1)``. A left set
is independent in the k-fold union of M_G exactly when some matching of the
lifted graph covers it, which is what :func:`union_independence` tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .graph import (BipartiteGraph, Edge, Matching, check_weights, is_matching,
                    left_mask, matching_covering, weight_of)
from .matroid import IndependenceOracle, canonical_ordering, greedy


def transversal_oracle(graph: BipartiteGraph) -> IndependenceOracle:
    return IndependenceOracle(
        graph.left_count,
        lambda mask: matching_covering(graph, mask) is not None,
        name="M_G",
    )


@dataclass(frozen=True)
class LiftedGraph:
    base: BipartiteGraph
    weights: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        object.__setattr__(self, "weights", check_weights(self.base, self.weights))

    @cached_property
    def graph(self) -> BipartiteGraph:
        edges = tuple((u, self.index(v, t)) for u, v in self.base.edges
                      for t in range(1, self.k + 1))
        return BipartiteGraph(self.base.left_count, self.base.right_count * self.k, edges)

    def index(self, v: int, t: int) -> int:
        if not (0 <= v < self.base.right_count and 1 <= t <= self.k):
            raise ValueError(f"no copy {v}({t}) in the lifted graph")
        return v * self.k + (t - 1)

    def label(self, r: int) -> tuple[int, int]:
        """``(v, t)`` for a lifted right index, with ``t`` counted from 1."""
        v, t = divmod(r, self.k)
        return v, t + 1

    def edge_weight(self, edge: Edge) -> int:
        if edge not in self.graph.edge_set:
            raise ValueError(f"{edge} is not an edge of the lifted graph")
        return self.weights[edge[0]]

    def matching_weight(self, matching: Matching) -> int:
        return weight_of(self.weights, left_mask(matching))

    @cached_property
    def oracle(self) -> IndependenceOracle:
        return IndependenceOracle(
            self.base.left_count,
            lambda mask: matching_covering(self.graph, mask) is not None,
            name=f"M_G^{self.k}",
        )


def build_lifted(graph: BipartiteGraph, weights: Sequence[int], k: int) -> LiftedGraph:
    return LiftedGraph(graph, tuple(weights), k)


def union_independence(lifted: LiftedGraph, mask: int) -> bool:
    return lifted.oracle.is_independent(mask)


def project_matching(lifted: LiftedGraph, matching: Matching) -> list[Matching]:
    """Split a lifted matching into one matching of the base graph per copy index."""
    if not is_matching(lifted.graph, matching):
        raise ValueError("not a matching of the lifted graph")
    parts: list[set[Edge]] = [set() for _ in range(lifted.k)]
    for u, r in matching:
        v, t = lifted.label(r)
        parts[t - 1].add((u, v))
    return [frozenset(p) for p in parts]


def lift_matching(lifted: LiftedGraph, parts: Sequence[Matching]) -> Matching:
    if len(parts) != lifted.k:
        raise ValueError(f"expected {lifted.k} matchings, got {len(parts)}")
    out: set[Edge] = set()
    covered = 0
    for t, part in enumerate(parts, start=1):
        if not is_matching(lifted.base, part):
            raise ValueError(f"part {t} is not a matching of the base graph")
        mask = left_mask(part)
        if mask & covered:
            raise ValueError(f"part {t} covers a left vertex already covered by an earlier part")
        covered |= mask
        out.update((u, lifted.index(v, t)) for u, v in part)
    return frozenset(out)


def optimal_base_lifted(graph: BipartiteGraph, weights: Sequence[int], k: int) -> tuple[int, Matching]:
    """An optimal base X of the k-fold union and a lifted matching covering exactly X.

    With weights living on left vertices and all weights non-negative, a
    matching covering an optimal base is a maximum-weight matching.
    """
    lifted = build_lifted(graph, weights, k)
    x = greedy(lifted.oracle, canonical_ordering(lifted.weights), lifted.weights)
    n = matching_covering(lifted.graph, x)
    assert n is not None
    return x, n
