"""k-robust subsets: witness checking, the constructive witness, and a brute-force oracle.

The constructive route takes an optimal base X of the k-fold union of a
transversal matroid and a base B of the matroid itself, and produces the
groups X_1..X_m and the assignment phi by walking the exchange digraph on
right vertices. Each step re-checks the facts the construction relies on and
raises :class:`~robustmatroid.errors.LemmaViolation` if one fails.

:func:`robust_bruteforce` decides robustness by search, for any oracle, and
shares nothing with the constructive route.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import LemmaViolation, WitnessStructureError, guard
from .graph import (BipartiteGraph, Matching, alternating_reachable, bits,
                    boundary, is_matching, left_mask, matching_covering,
                    members, path_gain, popcount, weight_of)
from .matroid import IndependenceOracle, enumerate_bases, rank
from .transversal import LiftedGraph, build_lifted, optimal_base_lifted, transversal_oracle

MAX_PRODUCT = 10**6
MAX_BRUTEFORCE_GROUND = 10


@dataclass(frozen=True)
class RobustWitness:
    """Groups ``X_1..X_m`` (stored 0-based) and ``phi`` mapping ``B \\ X`` onto ``1..m``."""

    groups: tuple[tuple[int, ...], ...]
    phi: tuple[tuple[int, int], ...]

    @property
    def phi_map(self) -> dict[int, int]:
        return dict(self.phi)

    def group_of(self, u: int) -> tuple[int, ...]:
        return self.groups[self.phi_map[u] - 1]

    def as_record(self) -> dict:
        return {
            "groups": [list(g) for g in self.groups],
            "phi": [[u, i] for u, i in self.phi],
        }


def _structure_check(k: int, x: int, b: int, witness: RobustWitness) -> None:
    outside = members(b & ~x)
    m = len(outside)
    if len(witness.groups) != m:
        raise WitnessStructureError(f"expected {m} groups, got {len(witness.groups)}")
    allowed = x & ~b
    seen = 0
    for i, g in enumerate(witness.groups, start=1):
        g_mask = bits(g)
        if len(set(g)) != len(g):
            raise WitnessStructureError(f"group {i} repeats an element")
        if g_mask & ~allowed:
            raise WitnessStructureError(f"group {i} is not inside X \\ B")
        if g_mask & seen:
            raise WitnessStructureError(f"group {i} overlaps an earlier group")
        seen |= g_mask
    phi = witness.phi_map
    if len(phi) != len(witness.phi):
        raise WitnessStructureError("phi lists an element twice")
    if sorted(phi) != list(outside):
        raise WitnessStructureError(f"phi must be defined exactly on B \\ X = {outside}")
    if sorted(phi.values()) != list(range(1, m + 1)):
        raise WitnessStructureError(f"phi is not a bijection onto 1..{m}")


def witness_failures(
    oracle: IndependenceOracle,
    weights: Sequence[int],
    k: int,
    x: int,
    b: int,
    witness: RobustWitness,
) -> list[str]:
    """Names of the failed conditions among R1, R2, R3 (empty when all hold).

    Raises WitnessStructureError for malformed witnesses and GuardError when
    the product of group sizes is above the enumeration limit.
    """
    _structure_check(k, x, b, witness)
    failed = []
    if any(len(g) != k for g in witness.groups):
        failed.append("R1")
    if any(weights[u] > weights[v] for u, i in witness.phi for v in witness.groups[i - 1]):
        failed.append("R2")
    guard("product of group sizes", math.prod(len(g) for g in witness.groups), MAX_PRODUCT)
    kept = b & x
    if not all(oracle.is_independent(kept | bits(choice))
               for choice in itertools.product(*witness.groups)):
        failed.append("R3")
    return failed


def check_witness(oracle, weights, k, x, b, witness) -> bool:
    return not witness_failures(oracle, weights, k, x, b, witness)


# -- constructive route ------------------------------------------------------


def group_by_right(lifted: LiftedGraph, matching: Matching) -> tuple[int, ...]:
    """``X_v`` for every base right vertex ``v``: left vertices matched to some copy of ``v``."""
    groups = [0] * lifted.base.right_count
    for u, r in matching:
        v, _ = lifted.label(r)
        groups[v] |= 1 << u
    return tuple(groups)


@dataclass(frozen=True)
class ExchangeDigraph:
    vertices: frozenset[int]
    arcs: frozenset[tuple[int, int]]
    # left vertex u in X_v & B carrying arc (v, v'), keyed by the arc
    carriers: tuple[tuple[tuple[int, int], int], ...]
    # M-partner of each element of B
    partner: tuple[tuple[int, int], ...]

    def successors(self, v: int) -> list[int]:
        return sorted(b for a, b in self.arcs if a == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def is_source(self, v: int) -> bool:
        return v in self.vertices and self.in_degree(v) == 0

    def is_sink(self, v: int) -> bool:
        return v in self.vertices and not self.successors(v)

    @property
    def sources(self) -> list[int]:
        return sorted(v for v in self.vertices if self.is_source(v))

    @property
    def sinks(self) -> list[int]:
        return sorted(v for v in self.vertices if self.is_sink(v))

    def carrier(self, arc: tuple[int, int]) -> int:
        return dict(self.carriers)[arc]


def build_exchange_digraph(groups: Sequence[int], b: int, m_matching: Matching) -> ExchangeDigraph:
    """The digraph D = (W, A) on right vertices, with every structural lemma re-checked.

    ``groups`` is the output of :func:`group_by_right`, ``m_matching`` a
    matching of the base graph covering exactly ``b``.
    """
    if left_mask(m_matching) != b:
        raise ValueError("the matching must cover exactly the base B on the left")
    partner = {u: v for u, v in m_matching}
    x = 0
    for g in groups:
        x |= g
    w_set = frozenset(
        v for v, g in enumerate(groups)
        if all(partner[u] != v for u in members(g & b))
    )
    arcs: dict[tuple[int, int], int] = {}
    for v in sorted(w_set):
        for u in members(groups[v] & b):
            target = partner[u]
            if target not in w_set:
                raise LemmaViolation(
                    "partner-in-W", f"u={u} in X_{v} & B has partner {target} outside W")
            arcs[(v, target)] = u
    d = ExchangeDigraph(w_set, frozenset(arcs), tuple(sorted(arcs.items())),
                        tuple(sorted(partner.items())))

    for v in sorted(w_set):
        if d.in_degree(v) > 1:
            raise LemmaViolation("in-degree", f"vertex {v} has in-degree {d.in_degree(v)}")
    for u in members(b & ~x):
        z = partner[u]
        if z not in w_set:
            raise LemmaViolation("source", f"partner {z} of u={u} is not in W")
        if not d.is_source(z):
            raise LemmaViolation("source", f"partner {z} of u={u} is not a source")
    for v in d.sinks:
        if groups[v] & b:
            raise LemmaViolation("sink", f"sink {v} has X_v & B = {members(groups[v] & b)}")
    return d


@dataclass(frozen=True)
class PathFamily:
    """One walk ``z_1..z_l`` in D per element ``u`` of ``B \\ X``.

    ``hops[i]`` is the element of ``X_{z_{i+1}} & B`` whose partner is ``z_{i+2}``
    (0-based), i.e. the left vertices the alternating path passes through.
    """

    base: int
    subset: int
    walks: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]

    def walk(self, u: int) -> tuple[int, ...]:
        return self._lookup(u)[0]

    def hops(self, u: int) -> tuple[int, ...]:
        return self._lookup(u)[1]

    def sink(self, u: int) -> int:
        return self.walk(u)[-1]

    def predecessor(self, u: int) -> int | None:
        z = self.walk(u)
        return z[-2] if len(z) >= 2 else None

    @property
    def starts(self) -> tuple[int, ...]:
        return tuple(u for u, _, _ in self.walks)

    def _lookup(self, u):
        for start, z, h in self.walks:
            if start == u:
                return z, h
        raise KeyError(u)


def extract_paths(d: ExchangeDigraph, groups: Sequence[int], b: int, x: int) -> PathFamily:
    partner = dict(d.partner)
    walks = []
    used: dict[int, int] = {}
    for u in members(b & ~x):
        z = [partner[u]]
        hop = []
        while True:
            nxt = d.successors(z[-1])
            if not nxt:
                break
            if len(z) > len(d.vertices):
                raise LemmaViolation("termination", f"walk from u={u} does not reach a sink")
            hop.append(d.carrier((z[-1], nxt[0])))
            z.append(nxt[0])
        if groups[z[-1]] & b:
            raise LemmaViolation("sink", f"walk from u={u} ends at {z[-1]} whose group meets B")
        for vertex in z:
            if vertex in used:
                raise LemmaViolation(
                    "disjointness", f"walks from u={used[vertex]} and u={u} share vertex {vertex}")
            used[vertex] = u
        walks.append((u, tuple(z), tuple(hop)))
    return PathFamily(b, x, tuple(walks))


def verify_exchange(
    graph: BipartiteGraph,
    m_matching: Matching,
    paths: PathFamily,
    choice: Mapping[int, int],
) -> Matching:
    """Shift ``m_matching`` along every walk so that ``u`` is replaced by ``choice[u]``.

    Asserts that the result is a matching of ``graph`` whose left boundary is
    ``(B & X) | {choice[u]}``.
    """
    removed, added = set(), set()
    for u in paths.starts:
        z = paths.walk(u)
        xs = (u,) + paths.hops(u) + (choice[u],)
        for i in range(1, len(z) + 1):
            removed.add((xs[i - 1], z[i - 1]))
            added.add((xs[i], z[i - 1]))
    missing = removed - set(m_matching)
    if missing:
        raise LemmaViolation("exchange", f"edges {sorted(missing)} are not in M")
    result = frozenset((set(m_matching) - removed) | added)
    try:
        ok = is_matching(graph, result)
    except ValueError as exc:
        raise LemmaViolation("exchange", str(exc)) from None
    if not ok:
        raise LemmaViolation("exchange", f"{sorted(result)} is not a matching")
    expected = (paths.base & paths.subset) | bits(choice[u] for u in paths.starts)
    if left_mask(result) != expected:
        raise LemmaViolation(
            "exchange", f"boundary {members(left_mask(result))} != {members(expected)}")
    return result


@dataclass(frozen=True)
class WitnessConstruction:
    lifted: LiftedGraph
    subset: int
    base: int
    lifted_matching: Matching
    base_matching: Matching
    groups: tuple[int, ...]
    digraph: ExchangeDigraph
    paths: PathFamily
    witness: RobustWitness


def is_optimal_union_base(lifted: LiftedGraph, x: int) -> bool:
    oracle = lifted.oracle
    if not oracle.is_independent(x) or popcount(x) != rank(oracle):
        return False
    best, _ = optimal_base_lifted(lifted.base, lifted.weights, lifted.k)
    return weight_of(lifted.weights, x) == weight_of(lifted.weights, best)


def build_witness(
    graph: BipartiteGraph,
    weights: Sequence[int],
    k: int,
    x: int,
    b: int,
) -> WitnessConstruction:
    """Run the full constructive pipeline and keep every intermediate object."""
    lifted = build_lifted(graph, weights, k)
    weights = lifted.weights
    if not is_optimal_union_base(lifted, x):
        raise ValueError(f"{members(x)} is not an optimal base of the {k}-fold union")
    m_matching = matching_covering(graph, b)
    if m_matching is None:
        raise ValueError(f"B = {members(b)} is not independent in M_G")
    if popcount(b) != rank(transversal_oracle(graph)):
        raise ValueError(f"B = {members(b)} is independent but not a base of M_G")
    n_matching = matching_covering(lifted.graph, x)
    if n_matching is None:
        raise LemmaViolation("realization", f"no lifted matching covers {members(x)}")

    groups = group_by_right(lifted, n_matching)
    d = build_exchange_digraph(groups, b, m_matching)
    paths = extract_paths(d, groups, b, x)

    covered_right = boundary(n_matching).right
    for u in paths.starts:
        q = paths.sink(u)
        copies = {lifted.index(q, t) for t in range(1, k + 1)}
        if not copies <= covered_right:
            raise LemmaViolation("copies-matched", f"some copy of sink {q} is exposed (u={u})")
        if popcount(groups[q]) != k:
            raise LemmaViolation("group-size", f"|X_{q}| = {popcount(groups[q])} != {k}")
        lightest = min(weights[w] for w in members(groups[q]))
        if weights[u] > lightest:
            raise LemmaViolation("weight", f"w(u={u}) = {weights[u]} > min weight {lightest} in X_{q}")
        reach = alternating_reachable(lifted.graph, n_matching, u)
        if reach.augmenting is not None:
            raise LemmaViolation("maximality", f"augmenting path {reach.augmenting.sequence}")
        p = paths.predecessor(u)
        targets = groups[q] | (groups[p] if p is not None else 0)
        for w in members(targets):
            if w not in reach.paths:
                raise LemmaViolation("alternating", f"no alternating path from u={u} to w={w}")
        if any(path_gain(path, weights) > 0 for path in reach.paths.values()):
            raise LemmaViolation("optimality", f"positive-gain alternating path from u={u}")

    # sigma enumerates the sinks in ascending order of u
    starts = paths.starts
    witness = RobustWitness(
        groups=tuple(members(groups[paths.sink(u)]) for u in starts),
        phi=tuple((u, i) for i, u in enumerate(starts, start=1)),
    )
    return WitnessConstruction(lifted, x, b, n_matching, m_matching, groups, d, paths, witness)


def construct_witness(graph: BipartiteGraph, weights: Sequence[int], k: int, x: int, b: int) -> RobustWitness:
    return build_witness(graph, weights, k, x, b).witness


# -- brute-force oracle ------------------------------------------------------


def find_witness_bruteforce(
    oracle: IndependenceOracle,
    weights: Sequence[int],
    k: int,
    x: int,
    b: int,
) -> RobustWitness | None:
    """Search for any witness for the base ``b``, or return ``None``."""
    outside = members(b & ~x)
    pool = members(x & ~b)
    kept = b & x
    if k * len(outside) > len(pool):
        return None

    chosen: list[tuple[int, ...]] = []

    def search(i: int, used: int, partial: list[int]) -> bool:
        if i == len(outside):
            return True
        u = outside[i]
        candidates = [v for v in pool if not used >> v & 1 and weights[v] >= weights[u]]
        for group in itertools.combinations(candidates, k):
            extended = [s | 1 << v for s in partial for v in group]
            if all(oracle.is_independent(s) for s in extended):
                chosen.append(group)
                if search(i + 1, used | bits(group), extended):
                    return True
                chosen.pop()
        return False

    if not oracle.is_independent(kept) or not search(0, 0, [kept]):
        return None
    return RobustWitness(tuple(chosen), tuple((u, i) for i, u in enumerate(outside, start=1)))


def robust_bruteforce(oracle: IndependenceOracle, weights: Sequence[int], k: int, x: int) -> bool:
    """Whether ``x`` is k-robust: every base admits some witness."""
    guard("ground size", oracle.ground_size, MAX_BRUTEFORCE_GROUND)
    return all(find_witness_bruteforce(oracle, weights, k, x, b) is not None
               for b in enumerate_bases(oracle))
