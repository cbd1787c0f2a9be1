import itertools

import pytest
from hypothesis import given, settings

from robustmatroid import robust
from robustmatroid.errors import GuardError, LemmaViolation, WitnessStructureError
from robustmatroid.graph import (BipartiteGraph, alternating_reachable, bits, matching_covering,
                                 members, popcount)
from robustmatroid.matroid import enumerate_bases, free_matroid, optimal_bases
from robustmatroid.robust import (RobustWitness, build_exchange_digraph, build_witness,
                                  check_witness, construct_witness, extract_paths,
                                  find_witness_bruteforce, group_by_right, robust_bruteforce,
                                  verify_exchange, witness_failures)
from robustmatroid.transversal import build_lifted, transversal_oracle
from strategies import weighted

STAR_W = (3, 2, 1)


def naive_robust(oracle, weights, k, x):
    """Try every ordered choice of k-subsets and let check_witness judge it."""
    for b in enumerate_bases(oracle):
        outside = members(b & ~x)
        pool = members(x & ~b)
        found = False
        subsets = list(itertools.combinations(pool, k))
        for groups in itertools.product(subsets, repeat=len(outside)):
            flat = [v for g in groups for v in g]
            if len(set(flat)) != len(flat):
                continue
            w = RobustWitness(tuple(groups), tuple((u, i) for i, u in enumerate(outside, 1)))
            if check_witness(oracle, weights, k, x, b, w):
                found = True
                break
        if not found:
            return False
    return True


class TestCheckWitness:
    def test_vacuous(self, star):
        m = transversal_oracle(star)
        assert check_witness(m, STAR_W, 2, bits([0, 1]), bits([0]), RobustWitness((), ()))

    def test_star(self, star):
        m = transversal_oracle(star)
        w = RobustWitness(((0, 1),), ((2, 1),))
        assert check_witness(m, STAR_W, 2, bits([0, 1]), bits([2]), w)

    def test_weight_condition_fails(self, star):
        m = transversal_oracle(star)
        w = RobustWitness(((0, 1),), ((2, 1),))
        assert witness_failures(m, (1, 1, 3), 2, bits([0, 1]), bits([2]), w) == ["R2"]

    def test_size_condition_fails(self, star):
        m = transversal_oracle(star)
        w = RobustWitness(((0,),), ((2, 1),))
        assert witness_failures(m, STAR_W, 2, bits([0, 1]), bits([2]), w) == ["R1"]

    def test_independence_condition_fails(self):
        # 1 and 2 share their only neighbour, so (B & X) + 2 = {1, 2} is dependent
        g = BipartiteGraph(3, 2, ((0, 0), (1, 1), (2, 1)))
        m = transversal_oracle(g)
        w = RobustWitness(((2,),), ((0, 1),))
        assert witness_failures(m, (0, 0, 0), 1, bits([1, 2]), bits([0, 1]), w) == ["R3"]

    @pytest.mark.parametrize("witness", [
        RobustWitness((), ()),                          # wrong number of groups
        RobustWitness(((2,),), ((2, 1),)),              # group not inside X \ B
        RobustWitness(((0, 0),), ((2, 1),)),            # repeated element
        RobustWitness(((0, 1),), ((1, 1),)),            # phi on the wrong domain
        RobustWitness(((0, 1),), ((2, 2),)),            # phi not onto 1..m
    ])
    def test_structural_errors(self, star, witness):
        with pytest.raises(WitnessStructureError):
            check_witness(transversal_oracle(star), STAR_W, 2, bits([0, 1]), bits([2]), witness)

    def test_overlapping_groups(self):
        m = free_matroid(4)
        w = RobustWitness(((2,), (2,)), ((0, 1), (1, 2)))
        with pytest.raises(WitnessStructureError):
            check_witness(m, (0,) * 4, 1, bits([2, 3]), bits([0, 1]), w)

    def test_product_guard(self):
        # six groups of eleven: 11**6 > 10**6 tuples
        m = free_matroid(72)
        groups = tuple(tuple(range(6 + 11 * i, 17 + 11 * i)) for i in range(6))
        w = RobustWitness(groups, tuple((u, u + 1) for u in range(6)))
        with pytest.raises(GuardError):
            witness_failures(m, (0,) * 72, 11, bits(range(6, 72)), bits(range(6)), w)


class TestPipelinePieces:
    def test_group_by_right(self, star):
        lifted = build_lifted(star, STAR_W, 2)
        assert group_by_right(lifted, frozenset()) == (0,)
        n = frozenset({(0, lifted.index(0, 1)), (1, lifted.index(0, 2))})
        assert group_by_right(lifted, n) == (bits([0, 1]),)

    def test_star_digraph(self, star):
        lifted = build_lifted(star, STAR_W, 2)
        n = matching_covering(lifted.graph, bits([0, 1]))
        d = build_exchange_digraph(group_by_right(lifted, n), bits([2]), frozenset({(2, 0)}))
        assert d.vertices == {0} and d.arcs == frozenset()
        assert d.sources == [0] and d.sinks == [0]

    def test_chain_digraph_without_arcs(self, chain):
        lifted = build_lifted(chain, (3, 2, 1), 1)
        n = matching_covering(lifted.graph, bits([0, 1]))
        groups = group_by_right(lifted, n)
        assert groups == (bits([0]), bits([1]))
        d = build_exchange_digraph(groups, bits([0, 2]), frozenset({(0, 0), (2, 1)}))
        assert d.vertices == {1} and d.arcs == frozenset()
        assert d.is_source(1) and d.is_sink(1)

    def test_chain_digraph_with_walk(self, chain):
        # weights (1, 3, 2): X = {1, 2}, B = {0, 1}; u = 0 walks v0 -> v1 through 1
        lifted = build_lifted(chain, (1, 3, 2), 1)
        n = matching_covering(lifted.graph, bits([1, 2]))
        groups = group_by_right(lifted, n)
        m = matching_covering(chain, bits([0, 1]))
        assert m == {(0, 0), (1, 1)}
        d = build_exchange_digraph(groups, bits([0, 1]), m)
        assert d.vertices == {0, 1}
        assert d.arcs == {(0, 1)} and d.carrier((0, 1)) == 1
        paths = extract_paths(d, groups, bits([0, 1]), bits([1, 2]))
        assert paths.walk(0) == (0, 1) and paths.hops(0) == (1,)
        assert paths.predecessor(0) == 0 and paths.sink(0) == 1
        assert verify_exchange(chain, m, paths, {0: 2}) == {(1, 0), (2, 1)}

    def test_single_vertex_walk(self, star):
        lifted = build_lifted(star, STAR_W, 2)
        n = matching_covering(lifted.graph, bits([0, 1]))
        groups = group_by_right(lifted, n)
        d = build_exchange_digraph(groups, bits([2]), frozenset({(2, 0)}))
        paths = extract_paths(d, groups, bits([2]), bits([0, 1]))
        assert paths.walk(2) == (0,) and paths.predecessor(2) is None

    def test_empty_family(self, star):
        lifted = build_lifted(star, STAR_W, 2)
        n = matching_covering(lifted.graph, bits([0, 1]))
        groups = group_by_right(lifted, n)
        d = build_exchange_digraph(groups, bits([0]), frozenset({(0, 0)}))
        paths = extract_paths(d, groups, bits([0]), bits([0, 1]))
        assert paths.walks == ()
        assert verify_exchange(star, frozenset({(0, 0)}), paths, {}) == {(0, 0)}

    def test_star_exchange(self, star):
        built = build_witness(star, STAR_W, 2, bits([0, 1]), bits([2]))
        for w in (0, 1):
            m2 = verify_exchange(star, built.base_matching, built.paths, {2: w})
            assert m2 == {(w, 0)}

    def test_exchange_rejects_bad_choice(self, chain):
        built = build_witness(chain, (1, 3, 2), 1, bits([1, 2]), bits([0, 1]))
        with pytest.raises(LemmaViolation):
            verify_exchange(chain, built.base_matching, built.paths, {0: 0})


class TestConstructWitness:
    def test_star(self, star):
        w = construct_witness(star, STAR_W, 2, bits([0, 1]), bits([2]))
        assert w == RobustWitness(((0, 1),), ((2, 1),))

    def test_base_inside_x(self, star):
        assert construct_witness(star, STAR_W, 2, bits([0, 1]), bits([1])) == RobustWitness((), ())

    def test_rejects_non_optimal_subset(self, star):
        with pytest.raises(ValueError, match="optimal"):
            construct_witness(star, STAR_W, 2, bits([1, 2]), bits([0]))

    def test_rejects_non_base(self, chain):
        with pytest.raises(ValueError, match="base"):
            construct_witness(chain, (1, 3, 2), 1, bits([1, 2]), bits([0]))
        with pytest.raises(ValueError, match="independent"):
            construct_witness(BipartiteGraph.complete(3, 1), STAR_W, 2, bits([0, 1]), bits([1, 2]))

    def test_lemma_checks_fire_on_a_non_optimal_subset(self, star, monkeypatch):
        monkeypatch.setattr(robust, "is_optimal_union_base", lambda lifted, x: True)
        with pytest.raises(LemmaViolation):
            build_witness(star, STAR_W, 2, bits([1, 2]), bits([0]))


def _optimal_triples(g, w, k):
    lifted = build_lifted(g, w, k)
    for x in optimal_bases(lifted.oracle, w):
        for b in enumerate_bases(transversal_oracle(g)):
            yield x, b


@settings(max_examples=150, deadline=None)
@given(weighted(max_left=6, max_right=4))
def test_constructed_witnesses_pass_and_lemmas_hold(gw):
    g, w = gw
    base = transversal_oracle(g)
    for k in (1, 2, 3):
        for x, b in _optimal_triples(g, w, k):
            built = build_witness(g, w, k, x, b)
            assert check_witness(base, w, k, x, b, built.witness)
            d = built.digraph
            assert all(d.in_degree(v) <= 1 for v in d.vertices)
            seen = set()
            for u in built.paths.starts:
                z = built.paths.walk(u)
                assert d.is_source(z[0]) and d.is_sink(z[-1])
                assert all((a, c) in d.arcs for a, c in zip(z, z[1:]))
                assert not seen & set(z)
                seen |= set(z)
                q = built.paths.sink(u)
                assert popcount(built.groups[q]) == k
                reach = alternating_reachable(built.lifted.graph, built.lifted_matching, u)
                assert set(members(built.groups[q])) <= set(reach.paths)
            for choice in itertools.product(*built.witness.groups):
                m2 = verify_exchange(g, built.base_matching, built.paths,
                                     dict(zip(built.paths.starts, choice)))
                assert base.is_independent(bits(u for u, _ in m2))


class TestBruteforce:
    def test_full_ground_set(self, star):
        assert robust_bruteforce(transversal_oracle(star), STAR_W, 2, 0b111)

    def test_star(self, star):
        m = transversal_oracle(star)
        assert not robust_bruteforce(m, STAR_W, 2, bits([0]))
        assert robust_bruteforce(m, STAR_W, 2, bits([0, 1]))
        assert find_witness_bruteforce(m, STAR_W, 2, bits([0, 1]), bits([2])) == RobustWitness(
            ((0, 1),), ((2, 1),))

    def test_guard(self):
        with pytest.raises(GuardError):
            robust_bruteforce(free_matroid(11), (0,) * 11, 1, 0)

    @settings(max_examples=60, deadline=None)
    @given(weighted(max_left=5, max_right=3))
    def test_agrees_with_naive_search(self, gw):
        g, w = gw
        m = transversal_oracle(g)
        for k in (1, 2):
            for x in range(0, 1 << g.left_count, 3):
                assert robust_bruteforce(m, w, k, x) == naive_robust(m, w, k, x)

    @settings(max_examples=60, deadline=None)
    @given(weighted(max_left=6, max_right=4))
    def test_optimal_union_bases_are_robust(self, gw):
        g, w = gw
        m = transversal_oracle(g)
        for k in (1, 2, 3):
            for x in optimal_bases(build_lifted(g, w, k).oracle, w):
                assert robust_bruteforce(m, w, k, x)
