"""Independence oracles over bitmask subsets and the exhaustive machinery on top.

Everything here is generic: an oracle is a ground-set size plus a membership
predicate. Rank, bases, circuits, the weighted greedy and the brute-force
``l``-fold union are all derived from that predicate.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator, Sequence

from .errors import guard
from .graph import members, popcount, weight_of

MAX_EXHAUSTIVE_GROUND = 16
MAX_UNION_GROUND = 12
MAX_ORDERING_GROUND = 8


class IndependenceOracle:
    """Membership test for the independent sets of a set system on ``0..n-1``.

    Answers are memoised; the predicate must be a pure function of the mask.
    """

    def __init__(self, ground_size: int, predicate: Callable[[int], bool], name: str = "M"):
        self.ground_size = ground_size
        self._predicate = predicate
        self._cache: dict[int, bool] = {}
        self.name = name

    @property
    def full_mask(self) -> int:
        return (1 << self.ground_size) - 1

    def is_independent(self, mask: int) -> bool:
        try:
            return self._cache[mask]
        except KeyError:
            pass
        if mask & ~self.full_mask:
            raise ValueError(f"subset {mask:#b} is outside the ground set")
        answer = bool(self._predicate(mask))
        self._cache[mask] = answer
        return answer

    def __call__(self, mask: int) -> bool:
        return self.is_independent(mask)

    def __repr__(self):
        return f"IndependenceOracle({self.name}, n={self.ground_size})"


def free_matroid(n: int) -> IndependenceOracle:
    return IndependenceOracle(n, lambda mask: True, name=f"free({n})")


def family_oracle(n: int, family: Sequence[Sequence[int]]) -> IndependenceOracle:
    """Oracle for an explicitly listed family of subsets (not necessarily a matroid)."""
    masks = {sum(1 << i for i in s) for s in family}
    return IndependenceOracle(n, masks.__contains__, name="family")


def _independent_sets(oracle: IndependenceOracle) -> list[int]:
    return [m for m in range(1 << oracle.ground_size) if oracle.is_independent(m)]


def find_axiom_violation(oracle: IndependenceOracle) -> str | None:
    """Describe the first failure of the empty-set, (I1) or (I2) axioms, if any.

    (I2) is checked for pairs with ``|J| = |I| + 1``; under (I1) this is
    equivalent to the general statement.
    """
    guard("ground size", oracle.ground_size, MAX_EXHAUSTIVE_GROUND)
    if not oracle.is_independent(0):
        return "the empty set is not independent"
    indep = _independent_sets(oracle)
    for j in indep:
        for x in members(j):
            if not oracle.is_independent(j & ~(1 << x)):
                return f"(I1) fails: {members(j)} independent but drops to a dependent set without {x}"
    by_size: dict[int, list[int]] = {}
    for m in indep:
        by_size.setdefault(popcount(m), []).append(m)
    full = oracle.full_mask
    for i in indep:
        augment = 0
        for x in members(full & ~i):
            if oracle.is_independent(i | 1 << x):
                augment |= 1 << x
        for j in by_size.get(popcount(i) + 1, ()):
            if j & augment == 0:
                return f"(I2) fails for I={members(i)}, J={members(j)}"
    return None


def check_axioms(oracle: IndependenceOracle) -> bool:
    return find_axiom_violation(oracle) is None


def rank(oracle: IndependenceOracle) -> int:
    # greedy scan is exact for matroids
    current = 0
    for x in range(oracle.ground_size):
        if oracle.is_independent(current | 1 << x):
            current |= 1 << x
    return popcount(current)


def _masks_of_size(n: int, size: int) -> Iterator[int]:
    for combo in itertools.combinations(range(n), size):
        yield sum(1 << i for i in combo)


def enumerate_bases(oracle: IndependenceOracle) -> list[int]:
    guard("ground size", oracle.ground_size, MAX_EXHAUSTIVE_GROUND)
    r = rank(oracle)
    return sorted(m for m in _masks_of_size(oracle.ground_size, r) if oracle.is_independent(m))


def optimal_bases(oracle: IndependenceOracle, weights: Sequence[int]) -> list[int]:
    bases = enumerate_bases(oracle)
    best = max(weight_of(weights, b) for b in bases)
    return [b for b in bases if weight_of(weights, b) == best]


def union_oracle_bruteforce(oracle: IndependenceOracle, ell: int) -> IndependenceOracle:
    """The ``ell``-fold union by backtracking over colourings into ``ell`` classes."""
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    guard("ground size", oracle.ground_size, MAX_UNION_GROUND)

    def partitionable(mask: int) -> bool:
        elems = members(mask)
        classes = [0] * ell

        def place(i: int) -> bool:
            if i == len(elems):
                return True
            x = elems[i]
            for c in range(ell):
                candidate = classes[c] | 1 << x
                if oracle.is_independent(candidate):
                    prev = classes[c]
                    classes[c] = candidate
                    if place(i + 1):
                        return True
                    classes[c] = prev
                if classes[c] == 0:
                    # remaining classes are empty too: symmetric choices
                    break
            return False

        return place(0)

    return IndependenceOracle(oracle.ground_size, partitionable, name=f"{oracle.name}^{ell}")


def check_ordering(order: Sequence[int], weights: Sequence[int]) -> tuple[int, ...]:
    """Validate that ``order`` lists the ground set by non-increasing weight."""
    order = tuple(order)
    if sorted(order) != list(range(len(weights))):
        raise ValueError(f"{order} is not a permutation of the ground set")
    for a, b in zip(order, order[1:]):
        if weights[a] < weights[b]:
            raise ValueError(f"ordering {order} places {a} (weight {weights[a]}) "
                             f"before heavier {b} (weight {weights[b]})")
    return order


def canonical_ordering(weights: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(range(len(weights)), key=lambda i: (-weights[i], i)))


def weight_classes(weights: Sequence[int]) -> list[tuple[int, ...]]:
    """Ground elements grouped by weight, heaviest class first."""
    levels = sorted(set(weights), reverse=True)
    return [tuple(i for i in range(len(weights)) if weights[i] == lam) for lam in levels]


def enumerate_orderings(weights: Sequence[int]) -> Iterator[tuple[int, ...]]:
    classes = weight_classes(weights)
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        yield tuple(itertools.chain.from_iterable(parts))


def greedy(oracle: IndependenceOracle, order: Sequence[int], weights: Sequence[int]) -> int:
    """Scan ``order`` and keep each element whose addition stays independent."""
    order = check_ordering(order, weights)
    if len(order) != oracle.ground_size:
        raise ValueError("ordering does not cover the ground set")
    current = 0
    for x in order:
        if oracle.is_independent(current | 1 << x):
            current |= 1 << x
    return current


def ordering_for_base(base: int, weights: Sequence[int]) -> tuple[int, ...]:
    """An ordering that lists, within each weight class, the members of ``base`` first."""
    out: list[int] = []
    for cls in weight_classes(weights):
        out.extend(x for x in cls if base >> x & 1)
        out.extend(x for x in cls if not base >> x & 1)
    return tuple(out)


def find_circuit(oracle: IndependenceOracle, mask: int) -> int:
    """A minimal dependent subset of the dependent set ``mask``.

    One ascending pass suffices: an element kept at its turn stays
    necessary because later removals only shrink the set.
    """
    if oracle.is_independent(mask):
        raise ValueError(f"{members(mask)} is independent and contains no circuit")
    current = mask
    for x in members(mask):
        smaller = current & ~(1 << x)
        if not oracle.is_independent(smaller):
            current = smaller
    return current


def greedy_equivalence_check(
    oracle: IndependenceOracle,
    weights: Sequence[int],
    ell: int,
    union: IndependenceOracle | None = None,
) -> bool:
    """Whether greedy outputs over all valid orderings are exactly the optimal bases of the union.

    ``union`` may supply a prebuilt oracle for the ``ell``-fold union; by
    default the brute-force partition oracle is used.
    """
    guard("ground size", oracle.ground_size, MAX_ORDERING_GROUND)
    if union is None:
        union = union_oracle_bruteforce(oracle, ell)
    optimal = set(optimal_bases(union, weights))
    produced = {greedy(union, xi, weights) for xi in enumerate_orderings(weights)}
    if not produced <= optimal:
        return False
    for z in optimal:
        if greedy(union, ordering_for_base(z, weights), weights) != z:
            return False
    return produced == optimal
