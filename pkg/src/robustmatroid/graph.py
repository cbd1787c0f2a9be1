"""Finite simple bipartite graphs, matchings and alternating paths.

Vertices are dense integer indices on each side: left vertices ``0..left_count-1``
and right vertices ``0..right_count-1``. An edge is the pair ``(u, v)`` with ``u``
on the left. Sets of left vertices are passed around as bitmasks; matchings are
frozensets of edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidPathError, guard

Edge = tuple[int, int]
Matching = frozenset  # frozenset[Edge]

MAX_WEIGHT = 2**63 - 1
MAX_ENUMERATION_EDGES = 24


def bits(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class BipartiteGraph:
    left_count: int
    right_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.left_count < 0 or self.right_count < 0:
            raise ValueError("vertex counts must be non-negative")
        normalized = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < self.left_count and 0 <= v < self.right_count):
                raise ValueError(f"edge {(u, v)} references a missing vertex")
            normalized.append((u, v))
        if len(set(normalized)) != len(normalized):
            raise ValueError("duplicate edge: the graph must be simple")
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @classmethod
    def complete(cls, left_count: int, right_count: int) -> "BipartiteGraph":
        return cls(left_count, right_count,
                   tuple((u, v) for u in range(left_count) for v in range(right_count)))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def left_adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.left_count)]
        for u, v in self.edges:
            adj[u].append(v)
        return tuple(tuple(a) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set


def check_weights(graph: BipartiteGraph, weights: Sequence[int]) -> tuple[int, ...]:
    """Validate a left-vertex weight map and return it as a tuple."""
    if len(weights) != graph.left_count:
        raise ValueError(
            f"expected {graph.left_count} weights, got {len(weights)}")
    out = []
    for w in weights:
        if isinstance(w, bool) or not isinstance(w, int):
            raise TypeError(f"weights must be integers, got {w!r}")
        if w < 0 or w > MAX_WEIGHT:
            raise ValueError(f"weight {w} outside the range 0..2^63-1")
        out.append(w)
    return tuple(out)


def weight_of(weights: Sequence[int], mask: int) -> int:
    total = sum(weights[i] for i in members(mask))
    if total > MAX_WEIGHT:
        raise OverflowError("total weight exceeds a 64-bit unsigned range")
    return total


class Boundary(NamedTuple):
    left: frozenset[int]
    right: frozenset[int]


def boundary(edges: Iterable[Edge]) -> Boundary:
    edges = list(edges)
    return Boundary(frozenset(u for u, _ in edges), frozenset(v for _, v in edges))


def left_mask(edges: Iterable[Edge]) -> int:
    return bits(u for u, _ in edges)


def is_matching(graph: BipartiteGraph, edges: Iterable[Edge]) -> bool:
    edges = list(edges)
    missing = [e for e in edges if e not in graph.edge_set]
    if missing:
        raise ValueError(f"edges {missing} are not in the graph")
    lefts = [u for u, _ in edges]
    rights = [v for _, v in edges]
    return len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)


def _mates(matching: Iterable[Edge]) -> tuple[dict[int, int], dict[int, int]]:
    left_mate, right_mate = {}, {}
    for u, v in matching:
        left_mate[u] = v
        right_mate[v] = u
    return left_mate, right_mate


ALTERNATING = "alternating"
AUGMENTING = "augmenting"


@dataclass(frozen=True)
class AlternatingPath:
    """A path ``x1, y1, x2, y2, ...`` checked against a matching.

    Odd length means the path ends on a left vertex (alternating kind);
    even length means it ends on an exposed right vertex (augmenting kind).
    Build instances with :func:`make_path`, which validates.
    """

    sequence: tuple[int, ...]
    kind: str = field(default=ALTERNATING)

    @property
    def left_vertices(self) -> tuple[int, ...]:
        return self.sequence[0::2]

    @property
    def right_vertices(self) -> tuple[int, ...]:
        return self.sequence[1::2]

    @property
    def start(self) -> int:
        return self.sequence[0]

    @property
    def end(self) -> int:
        return self.sequence[-1]

    def non_matching_edges(self) -> list[Edge]:
        xs, ys = self.left_vertices, self.right_vertices
        return [(xs[i], ys[i]) for i in range(len(ys))]

    def matching_edges(self) -> list[Edge]:
        xs, ys = self.left_vertices, self.right_vertices
        return [(xs[i + 1], ys[i]) for i in range(len(xs) - 1)]


def validate_path(graph: BipartiteGraph, matching: Matching, path: AlternatingPath) -> None:
    seq = path.sequence
    if not seq:
        raise InvalidPathError("empty path")
    expected = ALTERNATING if len(seq) % 2 == 1 else AUGMENTING
    if path.kind != expected:
        raise InvalidPathError(f"a sequence of length {len(seq)} cannot be {path.kind}")
    xs, ys = path.left_vertices, path.right_vertices
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise InvalidPathError(f"repeated vertex in {seq}")
    if any(not 0 <= x < graph.left_count for x in xs) or any(
            not 0 <= y < graph.right_count for y in ys):
        raise InvalidPathError(f"vertex out of range in {seq}")
    left_mate, right_mate = _mates(matching)
    if xs[0] in left_mate:
        raise InvalidPathError(f"start {xs[0]} is covered by the matching")
    for e in path.non_matching_edges():
        if e not in graph.edge_set or e in matching:
            raise InvalidPathError(f"{e} must be a non-matching edge of the graph")
    for e in path.matching_edges():
        if e not in matching:
            raise InvalidPathError(f"{e} must be a matching edge")
    if path.kind == AUGMENTING and ys[-1] in right_mate:
        raise InvalidPathError(f"end {ys[-1]} is covered by the matching")


def make_path(graph: BipartiteGraph, matching: Matching, sequence: Sequence[int]) -> AlternatingPath:
    seq = tuple(sequence)
    kind = ALTERNATING if len(seq) % 2 == 1 else AUGMENTING
    path = AlternatingPath(seq, kind)
    validate_path(graph, matching, path)
    return path


def apply_path(graph: BipartiteGraph, matching: Matching, path: AlternatingPath) -> Matching:
    """Return ``N (+) P``: swap the path's matching and non-matching edges."""
    validate_path(graph, matching, path)
    return frozenset((set(matching) - set(path.matching_edges())) | set(path.non_matching_edges()))


def path_gain(path: AlternatingPath, weights: Sequence[int]) -> int:
    if path.kind != ALTERNATING:
        raise InvalidPathError("gain is only defined for paths ending on the left")
    return weights[path.start] - weights[path.end]


class Reachability(NamedTuple):
    paths: dict[int, AlternatingPath]
    augmenting: AlternatingPath | None


def alternating_reachable(graph: BipartiteGraph, matching: Matching, start: int) -> Reachability:
    """Breadth-first search for alternating paths from an exposed left vertex.

    Returns one path per reachable covered left vertex, plus the first
    augmenting path found (``None`` if there is none). Neighbours are scanned
    in ascending order so the result is deterministic.
    """
    left_mate, right_mate = _mates(matching)
    if start in left_mate:
        raise InvalidPathError(f"start {start} is covered by the matching")
    parent: dict[int, tuple[int, int]] = {}  # left vertex -> (previous left, right via)
    seen_left = {start}
    seen_right: set[int] = set()
    augmenting_end: tuple[int, int] | None = None
    queue = deque([start])

    def trace(x: int) -> list[int]:
        seq = [x]
        while x != start:
            prev, y = parent[x]
            seq[:0] = [prev, y]
            x = prev
        return seq

    while queue:
        x = queue.popleft()
        for y in graph.left_adjacency[x]:
            if y in seen_right or left_mate.get(x) == y:
                continue
            seen_right.add(y)
            w = right_mate.get(y)
            if w is None:
                if augmenting_end is None:
                    augmenting_end = (x, y)
                continue
            if w in seen_left:
                continue
            seen_left.add(w)
            parent[w] = (x, y)
            queue.append(w)

    paths = {w: AlternatingPath(tuple(trace(w))) for w in sorted(parent)}
    augmenting = None
    if augmenting_end is not None:
        x, y = augmenting_end
        augmenting = AlternatingPath(tuple(trace(x) + [y]), AUGMENTING)
    return Reachability(paths, augmenting)


def matching_covering(graph: BipartiteGraph, mask: int) -> Matching | None:
    """A matching whose left boundary is exactly ``mask``, or ``None``.

    Augments one left vertex at a time in ascending index order, scanning
    neighbours in ascending order. A vertex that cannot be augmented at its
    turn never can be, so the first failure proves ``mask`` unmatchable.
    """
    right_mate: dict[int, int] = {}
    adj = graph.left_adjacency

    def augment(u: int, visited: set[int]) -> bool:
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if v not in right_mate or augment(right_mate[v], visited):
                right_mate[v] = u
                return True
        return False

    for u in members(mask):
        if u >= graph.left_count:
            return None
        if not augment(u, set()):
            return None
    return frozenset((u, v) for v, u in right_mate.items())


def enumerate_matchings(graph: BipartiteGraph) -> Iterator[Matching]:
    """Every matching of the graph, the empty one included, each exactly once."""
    guard("edge count", len(graph.edges), MAX_ENUMERATION_EDGES)
    edges = graph.edges

    def rec(i: int, used_left: int, used_right: int, chosen: list[Edge]):
        if i == len(edges):
            yield frozenset(chosen)
            return
        yield from rec(i + 1, used_left, used_right, chosen)
        u, v = edges[i]
        if not (used_left >> u) & 1 and not (used_right >> v) & 1:
            chosen.append((u, v))
            yield from rec(i + 1, used_left | 1 << u, used_right | 1 << v, chosen)
            chosen.pop()

    yield from rec(0, 0, 0, [])
