"""Exhaustive reference constructions for small sizes.

These are the independent yardsticks used by ``cographs check`` (and the
test suite): everything is rebuilt from first principles - set partitions,
multiset recursions, subset cuts - rather than through the counting or
sampling code paths they are meant to validate.  All of it is exponential
and intended for n up to about 7.
"""

from __future__ import annotations

from collections import Counter
from itertools import (
    combinations,
    combinations_with_replacement,
    permutations,
    product,
)
from typing import Iterator, Sequence

from .cotree import Cotree, CanonicalCotree, cograph_of, induced_cotree
from .graph import Cograph

__all__ = [
    "set_partitions",
    "all_labeled_cotrees",
    "all_unlabeled_cotrees",
    "all_connected_unlabeled_cographs",
    "all_plane_binary_decorated",
    "min_vertex_cut",
    "count_marked_labeled",
    "count_marked_automorphism_triples",
    "automorphisms",
    "shape_key",
]


def set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """All partitions of ``items`` into nonempty blocks.

    Standard recursion: the first item starts a block, every later item
    either joins an existing block or opens a new one, so each partition is
    produced exactly once.
    """
    items = list(items)
    if not items:
        yield []
        return

    def rec(i: int, blocks: list[list[int]]) -> Iterator[list[tuple[int, ...]]]:
        if i == len(items):
            yield [tuple(b) for b in blocks]
            return
        x = items[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [[items[0]]])


# ---------------------------------------------------------------------------
# labeled cotrees
# ---------------------------------------------------------------------------


def _labeled_specs(labels: tuple[int, ...], dec: int) -> list:
    """Nested specs of canonical cotrees on ``labels`` with root decoration
    ``dec`` (single leaves carry no decoration and are returned as ints)."""
    if len(labels) == 1:
        return [labels[0]]
    out = []
    for blocks in set_partitions(labels):
        if len(blocks) < 2:
            continue
        per_block = [_labeled_specs(b, 1 - dec) for b in blocks]
        for combo in product(*per_block):
            out.append((dec, *combo))
    return out


def all_labeled_cotrees(n: int) -> list[CanonicalCotree]:
    """Every canonical labeled cotree on labels 1..n (both root decorations).

    There are 1, 2, 8, 52, 472, 5504 of them for n = 1..6; exponential, so
    keep n small.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    labels = tuple(range(1, n + 1))
    if n == 1:
        return [CanonicalCotree.from_nested(1)]
    specs = _labeled_specs(labels, 0) + _labeled_specs(labels, 1)
    return [CanonicalCotree.from_nested(s) for s in specs]


# ---------------------------------------------------------------------------
# unlabeled cotrees
# ---------------------------------------------------------------------------


def _unlabeled_specs(n: int, dec: int, memo: dict) -> list:
    """Nested specs of canonical unlabeled cotrees of size ``n`` with root
    decoration ``dec`` ("*" leaves); each isomorphism class appears once."""
    if n == 1:
        return ["*"]
    key = (n, dec)
    if key in memo:
        return memo[key]
    out = []
    # integer partitions of n with >= 2 parts, as multisets {part: count}
    for parts in _partitions_min2(n):
        groups = sorted(Counter(parts).items())
        pools = []
        for size, cnt in groups:
            subs = _unlabeled_specs(size, 1 - dec, memo)
            pools.append(list(combinations_with_replacement(subs, cnt)))
        for chosen in product(*pools):
            children = [c for grp in chosen for c in grp]
            out.append((dec, *children))
    memo[key] = out
    return out


def _partitions_min2(n: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n into at least two parts (weakly decreasing)."""

    def rec(rest: int, biggest: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            if len(acc) >= 2:
                yield tuple(acc)
            return
        for p in range(min(rest, biggest), 0, -1):
            acc.append(p)
            yield from rec(rest - p, p, acc)
            acc.pop()

    yield from rec(n, n - 1, [])


def all_unlabeled_cotrees(n: int) -> list[CanonicalCotree]:
    """One representative per isomorphism class of canonical unlabeled
    cotrees of size n (both root decorations; 1, 2, 4, 10, 24, 66, 180
    classes for n = 1..7)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return [CanonicalCotree.from_nested("*")]
    memo: dict = {}
    specs = _unlabeled_specs(n, 0, memo) + _unlabeled_specs(n, 1, memo)
    return [CanonicalCotree.from_nested(s) for s in specs]


def all_connected_unlabeled_cographs(n: int) -> list[Cograph]:
    """One representative per isomorphism class of connected cographs on n
    vertices (cotrees whose root decoration is 1, plus the single vertex)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return [cograph_of(CanonicalCotree.from_nested("*"))]
    memo: dict = {}
    return [
        cograph_of(CanonicalCotree.from_nested(s))
        for s in _unlabeled_specs(n, 1, memo)
    ]


# ---------------------------------------------------------------------------
# plane decorated binary trees
# ---------------------------------------------------------------------------


def _plane_shapes(m: int) -> list:
    """All plane binary shapes with m leaf slots, as nested ("?", L, R)."""
    if m == 1:
        return ["slot"]
    out = []
    for left in range(1, m):
        for ls in _plane_shapes(left):
            for rs in _plane_shapes(m - left):
                out.append(("node", ls, rs))
    return out


def all_plane_binary_decorated(k: int) -> list[Cotree]:
    """Every decorated plane labeled binary tree with k leaves.

    Catalan(k-1) shapes, k! leaf labelings, 2^(k-1) decoration patterns:
    2 * 6 * 4 = 48 trees at k = 3 and 5 * 24 * 8 = 960 at k = 4.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return [Cotree.from_nested(1)]
    shapes = _plane_shapes(k)
    out = []

    for shape in shapes:
        internal = _count_internal(shape)
        for labels in permutations(range(1, k + 1)):
            for decs in product((0, 1), repeat=internal):
                it_labels = iter(labels)
                it_decs = iter(decs)
                spec = _fill_shape(shape, it_labels, it_decs)
                out.append(Cotree.from_nested(spec))
    return out


def _count_internal(shape) -> int:
    if shape == "slot":
        return 0
    return 1 + _count_internal(shape[1]) + _count_internal(shape[2])


def _fill_shape(shape, labels, decs):
    if shape == "slot":
        return next(labels)
    d = next(decs)
    left = _fill_shape(shape[1], labels, decs)
    right = _fill_shape(shape[2], labels, decs)
    return (d, left, right)


# ---------------------------------------------------------------------------
# vertex connectivity by subset removal
# ---------------------------------------------------------------------------


def min_vertex_cut(g: Cograph) -> int:
    """Size of a smallest vertex set whose removal disconnects ``g``.

    Tries every subset in increasing size; a complete graph (nothing short
    of n-1 removals disconnects it) gets n - 1.  Exponential; for the small
    connected graphs the acceptance check feeds it.
    """
    n = g.n
    if n == 1:
        return 0
    if not g.is_connected():
        return 0
    verts = range(n)
    for s in range(1, n - 1):
        for cut in combinations(verts, s):
            if not _connected_without(g, set(cut)):
                return s
    return n - 1


def _connected_without(g: Cograph, removed: set[int]) -> bool:
    keep = [v for v in range(g.n) if v not in removed]
    if not keep:
        return True
    seen = {keep[0]}
    queue = [keep[0]]
    while queue:
        v = queue.pop()
        for w in keep:
            if w not in seen and g.adjacent(v, w):
                seen.add(w)
                queue.append(w)
    return len(seen) == len(keep)


# ---------------------------------------------------------------------------
# marked-tree counts (ordered tuples of distinct marked leaves)
# ---------------------------------------------------------------------------


def count_marked_labeled(n: int, k: int) -> Counter:
    """Counts of (labeled cotree on [n], ordered k-tuple of distinct leaves)
    pairs, bucketed by the canonical key of the induced cotree."""

    buckets: Counter = Counter()
    for t in all_labeled_cotrees(n):
        leaves = t.leaves()
        for tup in permutations(leaves, k):
            buckets[induced_cotree(t, tup).canonical_key()] += 1
    return buckets


def shape_key(t: Cotree, v: int) -> bytes:
    """Canonical encoding of the subtree at ``v`` with labels ignored."""
    enc: dict[int, bytes] = {}
    stack: list[tuple[int, bool]] = [(v, False)]
    while stack:
        u, done = stack.pop()
        if not done:
            stack.append((u, True))
            for c in t.children(u):
                stack.append((c, False))
        else:
            if t.is_leaf(u):
                enc[u] = b"*"
            else:
                parts = sorted(enc[c] for c in t.children(u))
                enc[u] = b"(%d " % t.decoration(u) + b" ".join(parts) + b")"
    return enc[v]


def _iso_maps(t: Cotree, a: int, b: int) -> list[dict[int, int]]:
    """All isomorphisms subtree(a) -> subtree(b) as node-id maps.

    The two subtrees must share a shape (callers group siblings by
    :func:`shape_key` first); children of equal shape may be matched by any
    bijection, recursively.
    """
    if t.is_leaf(a):
        return [{a: b}]
    ga: dict[bytes, list[int]] = {}
    for c in t.children(a):
        ga.setdefault(shape_key(t, c), []).append(c)
    gb: dict[bytes, list[int]] = {}
    for c in t.children(b):
        gb.setdefault(shape_key(t, c), []).append(c)
    maps: list[dict[int, int]] = [{a: b}]
    for key, ca in ga.items():
        cb = gb[key]
        group_maps: list[dict[int, int]] = []
        for perm in permutations(cb):
            pools = [_iso_maps(t, x, y) for x, y in zip(ca, perm)]
            for combo in product(*pools):
                merged: dict[int, int] = {}
                for m in combo:
                    merged.update(m)
                group_maps.append(merged)
        maps = [{**base, **extra} for base in maps for extra in group_maps]
    return maps


def automorphisms(t: Cotree) -> list[dict[int, int]]:
    """All automorphisms of the unlabeled shape of ``t``, as node-id maps
    covering every node, internal ones included.  Labels play no role."""
    return _iso_maps(t, t.root, t.root)


def count_marked_automorphism_triples(n: int, k: int) -> Counter:
    """Counts of tuples (labeled cotree on [n], shape automorphism, ordered
    k-tuple of distinct marked leaves), bucketed by the induced cotree's
    canonical key, keeping only tuples where the automorphism fixes every
    first common ancestor of the marked leaves and every child of those
    nodes whose subtree holds a marked leaf.  The marked leaves themselves
    are free to move."""
    from .cotree import first_common_ancestor

    buckets: Counter = Counter()
    for t in all_labeled_cotrees(n):
        auts = automorphisms(t)
        leaves = t.leaves()
        below = _leafsets(t)
        for tup in permutations(leaves, k):
            marks = set(tup)
            required: set[int] = set()
            for i in range(k):
                for j in range(i + 1, k):
                    required.add(first_common_ancestor(t, tup[i], tup[j]))
            for f in tuple(required):
                for c in t.children(f):
                    if below[c] & marks:
                        required.add(c)
            ikey = induced_cotree(t, tup).canonical_key()
            hits = sum(
                1 for a in auts if all(a[x] == x for x in required)
            )
            buckets[ikey] += hits
    return buckets


def _leafsets(t: Cotree) -> dict[int, frozenset[int]]:
    """Leaf-id set below every node."""
    out: dict[int, frozenset[int]] = {}
    stack: list[tuple[int, bool]] = [(t.root, False)]
    while stack:
        v, done = stack.pop()
        if not done:
            stack.append((v, True))
            for c in t.children(v):
                stack.append((c, False))
        else:
            if t.is_leaf(v):
                out[v] = frozenset((v,))
            else:
                out[v] = frozenset().union(*(out[c] for c in t.children(v)))
    return out
