"""Cograph construction, recognition, and canonical forms."""

import random

import pytest

from cographs.graph import (
    Cograph,
    SizeLimitError,
    canonical_form_small,
    complement,
    connected_components,
    disjoint_union,
    format_edge_list,
    induced_subgraph,
    join,
    parse_edge_list,
)

from oracles import naive_is_cograph


def test_single_vertex():
    g = Cograph(1)
    assert g.n == 1
    assert g.edge_count == 0
    assert g.is_connected()


def test_join_and_union_shapes():
    k1 = Cograph(1)
    p = join(k1, k1)  # K2
    assert p.edge_count == 1 and p.adjacent(0, 1)
    u = disjoint_union(p, k1)
    assert u.n == 3 and u.edge_count == 1
    assert not u.is_connected()
    k3 = join(p, k1)
    assert k3.edge_count == 3


def test_complement_involution():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 12)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.4
        ]
        g = Cograph(n, edges)
        assert complement(complement(g)) == g


def test_connected_components_partition():
    g = Cograph(6, [(0, 1), (1, 2), (4, 5)])
    comps = connected_components(g)
    assert sorted(sorted(c) for c in comps) == [[0, 1, 2], [3], [4, 5]]


def test_induced_subgraph_edges():
    g = Cograph.path(5)
    h = induced_subgraph(g, [1, 2, 4])
    assert h.n == 3
    assert h.adjacent(0, 1) and not h.adjacent(0, 2) and not h.adjacent(1, 2)


def test_canonical_form_small_iso_invariance():
    # C4 is a cograph (= K2,2); relabelings share a canonical form
    base = Cograph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    perm = Cograph(4, [(2, 0), (0, 3), (3, 1), (1, 2)])
    assert canonical_form_small(base) == canonical_form_small(perm)
    other = Cograph.path(4)  # P4: not isomorphic to C4
    assert canonical_form_small(base) != canonical_form_small(other)


def test_canonical_form_small_counts_cograph_classes():
    # among all graphs on 4 vertices there are 10 cograph classes (= v_4)
    seen = set()
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    for mask in range(64):
        edges = [pairs[i] for i in range(6) if mask >> i & 1]
        g = Cograph(4, edges)
        adj = {v: {w for w in range(4) if g.adjacent(v, w)} for v in range(4)}
        if naive_is_cograph(adj, list(range(4))):
            seen.add(canonical_form_small(g))
    assert len(seen) == 10


def test_parse_edge_list_round_trip():
    g = Cograph(5, [(0, 2), (2, 4), (1, 3)])
    assert parse_edge_list(format_edge_list(g)) == g


def test_size_cap():
    with pytest.raises(SizeLimitError):
        Cograph(1 << 21)
