"""Hypothesis strategies for small bipartite instances."""

from hypothesis import strategies as st

from robustmatroid.graph import BipartiteGraph


@st.composite
def graphs(draw, max_left=6, max_right=4, min_left=0):
    n_left = draw(st.integers(min_left, max_left))
    n_right = draw(st.integers(0, max_right))
    pairs = [(u, v) for u in range(n_left) for v in range(n_right)]
    # one coin per pair keeps the density near one half
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return BipartiteGraph(n_left, n_right, tuple(p for p, k in zip(pairs, keep) if k))


@st.composite
def weighted(draw, max_left=6, max_right=4, wmax=3, min_left=0):
    g = draw(graphs(max_left, max_right, min_left))
    w = tuple(draw(st.lists(st.integers(0, wmax), min_size=g.left_count, max_size=g.left_count)))
    return g, w
