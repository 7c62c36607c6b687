"""Cotree structure, canonical forms, induced subtrees, and conversions."""

import random
from itertools import permutations

import pytest

from cographs.cotree import (
    CanonicalCotree,
    Cotree,
    as_canonical,
    canonical_cotree_of,
    cograph_of,
    degree_vector,
    first_common_ancestor,
    induced_cotree,
    leaf_degree,
    leaf_dfs_order,
    parse_cotree,
)
from cographs.graph import Cograph

from oracles import naive_is_cograph


def test_from_nested_validates():
    t = Cotree.from_nested((1, 1, (0, 2, 3)))
    assert t.n == 3 and t.labeled
    with pytest.raises(ValueError):
        Cotree.from_nested((1, 1))  # arity < 2
    with pytest.raises(ValueError):
        Cotree.from_nested((2, 1, 2))  # bad decoration
    with pytest.raises(ValueError):
        Cotree.from_nested((1, 1, 1))  # duplicate labels
    with pytest.raises(ValueError):
        CanonicalCotree.from_nested((1, 1, (1, 2, 3)))  # alternation broken


def test_canonical_key_ignores_child_order():
    a = Cotree.from_nested((1, 1, (0, 2, 3)))
    b = Cotree.from_nested((1, (0, 3, 2), 1))
    assert a.canonical_key() == b.canonical_key()
    assert a.plane_key() != b.plane_key()
    assert a != b


def test_cograph_of_join_semantics():
    # (1 1 (0 2 3)): vertex 1 joined to the union of 2 and 3
    g = cograph_of(Cotree.from_nested((1, 1, (0, 2, 3))))
    assert g.adjacent(0, 1) and g.adjacent(0, 2) and not g.adjacent(1, 2)
    # complete graph from a 1-root star of leaves
    k4 = cograph_of(Cotree.from_nested((1, 1, 2, 3, 4)))
    assert k4.edge_count == 6


def test_cograph_cotree_round_trip_small():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 9)
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    edges.append((i, j))
        g = Cograph(n, edges)
        adj = {v: {w for w in range(n) if g.adjacent(v, w)} for v in range(n)}
        if naive_is_cograph(adj, list(range(n))):
            t = canonical_cotree_of(g)
            assert t.is_canonical
            assert cograph_of(t) == g
        else:
            with pytest.raises(ValueError):
                canonical_cotree_of(g)


def test_p4_rejected():
    with pytest.raises(ValueError):
        canonical_cotree_of(Cograph.path(4))


def test_first_common_ancestor_and_edges():
    t = Cotree.from_nested((1, (0, 1, 2), (0, 3, (1, 4, 5))))
    g = cograph_of(t)
    leaves = {t.label(v): v for v in t.leaves()}
    for i, j in permutations(range(1, 6), 2):
        fca = first_common_ancestor(t, leaves[i], leaves[j])
        assert (t.decoration(fca) == 1) == g.adjacent(i - 1, j - 1)


def test_degree_vector_matches_graph():
    rng = random.Random(3)
    for _ in range(30):
        t = _random_canonical(rng, rng.randint(1, 20))
        g = cograph_of(t)
        dv = degree_vector(t)
        assert dv == g.degrees()
        for leaf in t.leaves():
            assert leaf_degree(t, leaf) == dv[t.label(leaf) - 1]


def test_induced_cotree_matches_induced_subgraph():
    rng = random.Random(7)
    from cographs.graph import induced_subgraph

    for _ in range(40):
        t = _random_canonical(rng, rng.randint(3, 15))
        g = cograph_of(t)
        leaves = t.leaves()
        k = rng.randint(1, min(6, t.n))
        idx = rng.sample(range(t.n), k)
        sub = induced_cotree(t, [leaves[i] for i in idx])
        assert sub.labeled and sub.n == k
        # vertex i of the induced cotree's graph is the i-th chosen leaf,
        # matching induced_subgraph's order-preserving contract exactly
        want = induced_subgraph(g, [t.label(leaves[i]) - 1 for i in idx])
        assert cograph_of(sub) == want


def test_induced_cotree_rejects_bad_marks():
    t = Cotree.from_nested((1, 1, (0, 2, 3)))
    leaf = t.leaves()[0]
    with pytest.raises(ValueError):
        induced_cotree(t, [leaf, leaf])
    with pytest.raises(ValueError):
        induced_cotree(t, [t.root])
    with pytest.raises(ValueError):
        induced_cotree(t, [])


def test_leaf_dfs_order_sorted_by_min_label():
    t = Cotree.from_nested((1, (0, 4, 2), 1, (0, 5, 3)))
    order = [t.label(v) for v in leaf_dfs_order(t)]
    assert order == [1, 2, 4, 3, 5]  # children visited by smallest label
    shuffled = leaf_dfs_order(t, rng=random.Random(0))
    assert sorted(shuffled) == sorted(t.leaves())


def test_parse_format_round_trip():
    rng = random.Random(19)
    for _ in range(40):
        t = _random_canonical(rng, rng.randint(1, 12))
        assert parse_cotree(str(t)) == t
    with pytest.raises(ValueError):
        parse_cotree("(1 1")
    with pytest.raises(ValueError):
        parse_cotree("(3 1 2)")


def test_as_canonical_checks_alternation():
    t = Cotree.from_nested((1, 1, (0, 2, 3)))
    assert isinstance(as_canonical(t), CanonicalCotree)
    bad = Cotree.from_nested((1, 1, (1, 2, 3)))
    with pytest.raises(ValueError):
        as_canonical(bad)


def _random_canonical(rng: random.Random, n: int) -> CanonicalCotree:
    """Reference-free random canonical labeled cotree (not uniform)."""
    from cographs.cotree import CotreeBuilder

    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    b = CotreeBuilder()

    def grow(parent: int, size: int, dec: int):
        if size == 1:
            b.leaf(parent, label=labels.pop())
            return
        v = b.internal(parent, dec)
        parts = _random_parts(rng, size)
        for s in parts:
            grow(v, s, 1 - dec)

    grow(-1, n, rng.randint(0, 1))
    return b.build(cls=CanonicalCotree)


def _random_parts(rng: random.Random, size: int) -> list[int]:
    """Split size into >= 2 parts, each >= 1."""
    cuts = sorted(rng.sample(range(1, size), rng.randint(1, size - 1)))
    parts = []
    prev = 0
    for c in cuts + [size]:
        parts.append(c - prev)
        prev = c
    return parts
