"""Cotrees: the tree encoding of cographs.

A *cotree* is a rooted tree whose internal nodes each have at least two
children and carry a decoration in {0, 1}; leaves may carry labels forming a
bijection onto ``1..n``.  A cotree is *canonical* when decorations alternate
along every root-to-leaf path.  Every cograph has exactly one canonical
cotree (labeled or unlabeled, matching the graph), and the graph is
recovered by making two vertices adjacent iff the first common ancestor of
their leaves is decorated 1.

Storage is a flat arena (parallel tuples indexed by node id) inside an
immutable :class:`Cotree`; samplers construct through the mutable
:class:`CotreeBuilder`.  All traversals here are iterative, so trees as deep
as the renderer cap (2**14 leaves) are safe.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .graph import Cograph

__all__ = [
    "Cotree",
    "CanonicalCotree",
    "CotreeBuilder",
    "NotACograph",
    "cograph_of",
    "first_common_ancestor",
    "canonical_cotree_of",
    "canonicalize",
    "induced_cotree",
    "degree_vector",
    "leaf_dfs_order",
    "parse_cotree",
    "format_cotree",
]

LEAF = -1


class NotACograph(ValueError):
    """Raised when a graph contains an induced P4 (so it is not a cograph).

    ``vertices`` holds one offending vertex set: four vertex ids of the input
    graph inducing a path on four vertices.
    """

    def __init__(self, vertices: tuple[int, int, int, int]):
        self.vertices = tuple(vertices)
        super().__init__(
            f"not a cograph: vertices {self.vertices} induce a P4"
        )


class Cotree:
    """Immutable cotree stored as arena arrays.

    Node ids are ``0..size-1`` with the root at ``root``.  ``decoration(v)``
    is 0 or 1 for internal nodes and -1 for leaves.  Child order is part of
    the value (plane structure); non-plane comparisons go through
    :meth:`canonical_key`.
    """

    __slots__ = (
        "_dec",
        "_children",
        "_parent",
        "_leafcount",
        "_labels",
        "_root",
        "_leaves",
        "_depth",
        "_label_to_leaf",
        "_hash",
    )

    def __init__(self, *args, **kwargs):
        raise TypeError(
            "construct cotrees via Cotree.from_nested, parse_cotree, "
            "CotreeBuilder, or the library functions"
        )

    @classmethod
    def _adopt(
        cls,
        dec: tuple[int, ...],
        children: tuple[tuple[int, ...], ...],
        parent: tuple[int, ...],
        leafcount: tuple[int, ...],
        labels: Optional[tuple[int, ...]],
        root: int,
    ) -> "Cotree":
        t = object.__new__(cls)
        t._dec = dec
        t._children = children
        t._parent = parent
        t._leafcount = leafcount
        t._labels = labels
        t._root = root
        t._leaves = None
        t._depth = None
        t._label_to_leaf = None
        t._hash = None
        return t

    @classmethod
    def from_nested(cls, spec) -> "Cotree":
        """Build and validate a cotree from nested Python data.

        ``spec`` is an int (labeled leaf), ``None``/``"*"`` (unlabeled leaf),
        or a sequence ``(dec, child, child, ...)`` with ``dec`` in {0, 1} and
        at least two children.
        """
        b = CotreeBuilder()
        _build_nested(b, spec, -1)
        t = b.build(cls=cls)
        t.validate()
        if issubclass(cls, CanonicalCotree) and not t.is_canonical:
            raise ValueError("cotree is not canonical (alternation violated)")
        return t

    # -- queries -------------------------------------------------------------

    @property
    def size(self) -> int:
        """Total node count (internal + leaves)."""
        return len(self._dec)

    @property
    def root(self) -> int:
        return self._root

    @property
    def n(self) -> int:
        """Leaf count = vertex count of the associated cograph."""
        return self._leafcount[self._root]

    def decoration(self, v: int) -> int:
        """0 or 1 for internal nodes, -1 for leaves."""
        return self._dec[v]

    def is_leaf(self, v: int) -> bool:
        return self._dec[v] == LEAF

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def parent(self, v: int) -> int:
        """Parent node id, or -1 for the root."""
        return self._parent[v]

    def leaf_count(self, v: int) -> int:
        """Number of leaves in the subtree rooted at ``v``."""
        return self._leafcount[v]

    @property
    def labeled(self) -> bool:
        return self._labels is not None

    def label(self, v: int) -> Optional[int]:
        """Leaf label in 1..n, or None when the tree is unlabeled."""
        if self._labels is None:
            return None
        return self._labels[v]

    def leaves(self) -> tuple[int, ...]:
        """Leaf node ids in stored (plane) depth-first order."""
        if self._leaves is None:
            out = []
            stack = [self._root]
            while stack:
                v = stack.pop()
                if self._dec[v] == LEAF:
                    out.append(v)
                else:
                    stack.extend(reversed(self._children[v]))
            self._leaves = tuple(out)
        return self._leaves

    def leaf_of_label(self, label: int) -> int:
        if self._labels is None:
            raise ValueError("unlabeled cotree has no label map")
        if self._label_to_leaf is None:
            self._label_to_leaf = {
                self._labels[v]: v for v in self.leaves()
            }
        return self._label_to_leaf[label]

    def depth(self, v: int) -> int:
        if self._depth is None:
            d = [0] * len(self._dec)
            stack = [self._root]
            while stack:
                u = stack.pop()
                du = d[u] + 1
                for c in self._children[u]:
                    d[c] = du
                    stack.append(c)
            self._depth = tuple(d)
        return self._depth[v]

    @property
    def is_canonical(self) -> bool:
        """True iff decorations alternate along every edge (and arity >= 2)."""
        for v, ch in enumerate(self._children):
            d = self._dec[v]
            if d == LEAF:
                continue
            if len(ch) < 2:
                return False
            for c in ch:
                dc = self._dec[c]
                if dc != LEAF and dc == d:
                    return False
        return True

    def validate(self) -> None:
        """Check structural invariants; raise ValueError on violation."""
        n = 0
        seen_labels = []
        for v, d in enumerate(self._dec):
            if d == LEAF:
                n += 1
                if self._leafcount[v] != 1:
                    raise ValueError("leaf with leaf_count != 1")
                if self._labels is not None:
                    seen_labels.append(self._labels[v])
            else:
                if d not in (0, 1):
                    raise ValueError(f"bad decoration {d} at node {v}")
                ch = self._children[v]
                if len(ch) < 2:
                    raise ValueError(
                        f"internal node {v} has {len(ch)} < 2 children"
                    )
                if self._leafcount[v] != sum(self._leafcount[c] for c in ch):
                    raise ValueError("inconsistent subtree leaf counts")
                for c in ch:
                    if self._parent[c] != v:
                        raise ValueError("broken parent link")
        if self._parent[self._root] != -1:
            raise ValueError("root has a parent")
        if self._labels is not None and sorted(seen_labels) != list(
            range(1, n + 1)
        ):
            raise ValueError("leaf labels are not a bijection onto 1..n")

    # -- canonical (non-plane) encoding ---------------------------------------

    def canonical_key(self) -> bytes:
        """Canonical encoding: decoration + sorted child encodings (+ labels).

        Equal keys <=> equal cotrees up to reordering children.  Labels are
        included when present, so labeled cotrees compare as labeled objects.
        This is the bucket key used by the statistics layer.
        """
        enc: dict[int, bytes] = {}
        # iterative post-order
        stack: list[tuple[int, bool]] = [(self._root, False)]
        while stack:
            v, done = stack.pop()
            if not done:
                stack.append((v, True))
                for c in self._children[v]:
                    stack.append((c, False))
            else:
                if self._dec[v] == LEAF:
                    if self._labels is not None:
                        enc[v] = b"L%d" % self._labels[v]
                    else:
                        enc[v] = b"*"
                else:
                    parts = sorted(enc[c] for c in self._children[v])
                    enc[v] = (
                        b"(%d " % self._dec[v] + b" ".join(parts) + b")"
                    )
        return enc[self._root]

    # -- equality is plane-structural ------------------------------------------

    def _plane_tuple(self):
        out = []
        stack = [self._root]
        while stack:
            v = stack.pop()
            d = self._dec[v]
            if d == LEAF:
                out.append(
                    (LEAF, self._labels[v] if self._labels is not None else 0)
                )
            else:
                out.append((d, len(self._children[v])))
                stack.extend(reversed(self._children[v]))
        return tuple(out)

    def plane_key(self) -> tuple:
        """Hashable plane-structural encoding (child order preserved).

        Two cotrees get the same key exactly when ``==`` holds, i.e. same
        shape, decorations, child order, and labels.  Useful for bucketing
        plane objects such as decorated binary trees, where
        :meth:`canonical_key` would collapse child order.
        """
        return (self.labeled, self._plane_tuple())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cotree):
            return NotImplemented
        return (
            self.labeled == other.labeled
            and self._plane_tuple() == other._plane_tuple()
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.labeled, self._plane_tuple()))
        return self._hash

    def __repr__(self) -> str:
        kind = "labeled" if self.labeled else "unlabeled"
        return f"<Cotree n={self.n} size={self.size} {kind}>"

    def __str__(self) -> str:
        return format_cotree(self)


class CanonicalCotree(Cotree):
    """A :class:`Cotree` whose decorations alternate along every edge."""

    __slots__ = ()


def as_canonical(t: Cotree) -> CanonicalCotree:
    """Re-tag ``t`` as a :class:`CanonicalCotree`, validating alternation."""
    if not t.is_canonical:
        raise ValueError("cotree is not canonical (alternation violated)")
    return CanonicalCotree._adopt(
        t._dec, t._children, t._parent, t._leafcount, t._labels, t._root
    )


def _build_nested(b: "CotreeBuilder", spec, parent: int) -> None:
    stack = [(spec, parent)]
    # explicit stack preserving child order
    while stack:
        node, par = stack.pop()
        if isinstance(node, int) and not isinstance(node, bool):
            b.leaf(par, label=node)
        elif node is None or node == "*":
            b.leaf(par)
        elif isinstance(node, (tuple, list)) and node and node[0] in (0, 1):
            nid = b.internal(par, node[0])
            for child in reversed(node[1:]):
                stack.append((child, nid))
        else:
            raise ValueError(f"bad cotree spec element {node!r}")


class CotreeBuilder:
    """Mutable arena for assembling a cotree; ``build()`` freezes it.

    Nodes must be created parents-before-children (``parent`` id already
    allocated); the first node created is the root (parent -1).
    """

    __slots__ = ("dec", "children", "parent", "labels", "has_labels")

    def __init__(self):
        self.dec: list[int] = []
        self.children: list[list[int]] = []
        self.parent: list[int] = []
        self.labels: list[int] = []
        self.has_labels = False

    def _new(self, parent: int, d: int, label: int) -> int:
        nid = len(self.dec)
        self.dec.append(d)
        self.children.append([])
        self.parent.append(parent)
        self.labels.append(label)
        if parent >= 0:
            self.children[parent].append(nid)
        return nid

    def leaf(self, parent: int, label: Optional[int] = None) -> int:
        if label is not None:
            self.has_labels = True
        return self._new(parent, LEAF, 0 if label is None else label)

    def internal(self, parent: int, d: Optional[int] = None) -> int:
        return self._new(parent, -2 if d is None else d, 0)

    def set_decoration(self, v: int, d: int) -> None:
        self.dec[v] = d

    def copy_subtree(self, src: int, parent: int) -> int:
        """Clone the finished subtree rooted at ``src`` under ``parent``."""
        dec, labels = self.dec, self.labels
        top = self._new(parent, dec[src], labels[src])
        stack = [(src, top)]
        while stack:
            v, nv = stack.pop()
            for c in self.children[v]:
                nc = self._new(nv, dec[c], labels[c])
                stack.append((c, nc))
        return top

    def alternate_decorations(self, root_dec: int) -> None:
        """Fill every internal decoration by depth parity from ``root_dec``."""
        if not self.dec:
            return
        stack = [(0, root_dec)]
        while stack:
            v, d = stack.pop()
            if self.dec[v] != LEAF:
                self.dec[v] = d
                for c in self.children[v]:
                    stack.append((c, 1 - d))

    def set_labels_by_dfs(self, labels: Sequence[int]) -> None:
        """Assign ``labels`` to leaves in stored depth-first order."""
        it = iter(labels)
        stack = [0]
        while stack:
            v = stack.pop()
            if self.dec[v] == LEAF:
                self.labels[v] = next(it)
            else:
                stack.extend(reversed(self.children[v]))
        self.has_labels = True

    def build(self, cls: type = Cotree, root: int = 0) -> Cotree:
        size = len(self.dec)
        if size == 0:
            raise ValueError("empty builder")
        leafcount = [0] * size
        dec = self.dec
        children = self.children
        # post-order leaf count accumulation
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                leafcount[v] = sum(leafcount[c] for c in children[v])
            elif dec[v] == LEAF:
                leafcount[v] = 1
            else:
                stack.append((v, True))
                for c in children[v]:
                    stack.append((c, False))
        labels = tuple(self.labels) if self.has_labels else None
        return cls._adopt(
            tuple(dec),
            tuple(tuple(c) for c in children),
            tuple(self.parent),
            tuple(leafcount),
            labels,
            root,
        )


# -- core operations -----------------------------------------------------------


def cograph_of(t: Cotree) -> Cograph:
    """The cograph encoded by ``t``.

    One vertex per leaf: vertex index = label - 1 when the tree is labeled,
    else the leaf's position in the stored depth-first order.  Two vertices
    are adjacent iff the first common ancestor of their leaves is decorated 1.
    """
    n = t.n
    leaves = t.leaves()
    if t.labeled:
        vid = {v: t.label(v) - 1 for v in leaves}
    else:
        vid = {v: i for i, v in enumerate(leaves)}
    rows = [0] * n
    # bottom-up: per node, keep the bitset of its leaf vertices; a 1-node
    # connects each child's set to the union of its siblings'.
    mask: dict[int, int] = {}
    order: list[int] = []
    stack = [t.root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(t.children(v))
    for v in reversed(order):
        if t.is_leaf(v):
            mask[v] = 1 << vid[v]
        else:
            child_masks = [mask[c] for c in t.children(v)]
            total = 0
            for m in child_masks:
                total |= m
            mask[v] = total
            if t.decoration(v) == 1:
                for m in child_masks:
                    others = total & ~m
                    mm = m
                    while mm:
                        low = mm & -mm
                        rows[low.bit_length() - 1] |= others
                        mm ^= low
    return Cograph._from_rows(rows)


def first_common_ancestor(t: Cotree, u: int, v: int) -> int:
    """Deepest common ancestor of nodes ``u`` and ``v``; fca(u, u) = u."""
    du, dv = t.depth(u), t.depth(v)
    while du > dv:
        u = t.parent(u)
        du -= 1
    while dv > du:
        v = t.parent(v)
        dv -= 1
    while u != v:
        u = t.parent(u)
        v = t.parent(v)
    return u


def canonical_cotree_of(g: Cograph) -> CanonicalCotree:
    """The unique canonical cotree of ``g`` (leaf labels = vertex ids + 1).

    Runs the complement-connectivity recursion: a disconnected (sub)graph
    becomes a 0-node over its components, a connected one whose complement
    is disconnected becomes a 1-node over the complement's components.  If
    some subgraph of size >= 2 is connected both ways, ``g`` is not a
    cograph and :class:`NotACograph` reports an induced-P4 witness.
    """
    n = g.n
    if n == 0:
        raise ValueError("empty graph has no cotree")
    rows = [g.row(i) for i in range(n)]
    b = CotreeBuilder()

    def comps(mask: int, use_complement: bool) -> list[int]:
        out = []
        unseen = mask
        while unseen:
            seed = unseen & -unseen
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    i = low.bit_length() - 1
                    if use_complement:
                        nxt |= mask & ~rows[i] & ~low
                    else:
                        nxt |= mask & rows[i]
                    f ^= low
                frontier = nxt & ~comp
                comp |= frontier
            unseen &= ~comp
            out.append(comp)
        return out

    full = (1 << n) - 1
    # work items: (mask, parent id, required split: 0, 1 or -1 for either)
    work: list[tuple[int, int, int]] = [(full, -1, -1)]
    while work:
        mask, parent, need = work.pop()
        if mask & (mask - 1) == 0:
            b.leaf(parent, label=mask.bit_length())
            continue
        if need != 1:
            parts = comps(mask, False)
            if len(parts) >= 2:
                nid = b.internal(parent, 0)
                for p in reversed(parts):
                    work.append((p, nid, 1))
                continue
            if need == 0:
                raise NotACograph(_find_p4(rows, mask))
        parts = comps(mask, True)
        if len(parts) >= 2:
            nid = b.internal(parent, 1)
            for p in reversed(parts):
                work.append((p, nid, 0))
            continue
        raise NotACograph(_find_p4(rows, mask))
    return b.build(cls=CanonicalCotree)


def _find_p4(rows: Sequence[int], mask: int) -> tuple[int, int, int, int]:
    """An induced P4 a-b-c-d inside ``mask`` (exists whenever the induced
    subgraph is connected and co-connected with >= 2 vertices)."""
    verts = []
    m = mask
    while m:
        low = m & -m
        verts.append(low.bit_length() - 1)
        m ^= low
    for bmid in verts:
        rb = rows[bmid] & mask
        cc = rb
        while cc:
            lc = cc & -cc
            cc ^= lc
            c = lc.bit_length() - 1
            ra = rb & ~rows[c] & ~lc  # adjacent to b, not to c, not c itself
            rd = rows[c] & mask & ~rows[bmid] & ~(1 << bmid)
            aa = ra
            while aa:
                la = aa & -aa
                aa ^= la
                a = la.bit_length() - 1
                dd = rd & ~rows[a] & ~la
                if dd:
                    d = (dd & -dd).bit_length() - 1
                    return tuple(sorted((a, bmid, c, d)))
    raise AssertionError("no P4 found in a connected, co-connected subgraph")


def canonicalize(t: Cotree) -> CanonicalCotree:
    """Contract every edge whose child repeats its parent's decoration.

    The result is the canonical cotree of the same (labeled) cograph; child
    order is preserved through splices, so plane inputs keep their leaf
    order.
    """
    b = CotreeBuilder()
    # stack carries (node in t, new parent id, parent decoration)
    root = t.root
    if t.is_leaf(root):
        b.leaf(-1, label=t.label(root))
        return b.build(cls=CanonicalCotree)
    stack: list[tuple[int, int, int]] = []
    nid = b.internal(-1, t.decoration(root))
    for c in reversed(t.children(root)):
        stack.append((c, nid, t.decoration(root)))
    while stack:
        v, parent, pdec = stack.pop()
        d = t.decoration(v)
        if d == LEAF:
            b.leaf(parent, label=t.label(v))
        elif d == pdec:
            for c in reversed(t.children(v)):
                stack.append((c, parent, pdec))
        else:
            nv = b.internal(parent, d)
            for c in reversed(t.children(v)):
                stack.append((c, nv, d))
    return b.build(cls=CanonicalCotree)


def induced_cotree(t: Cotree, leaf_ids: Sequence[int]) -> Cotree:
    """The labeled cotree induced by a tuple of distinct leaves.

    Internal nodes of the result are the first common ancestors of pairs of
    chosen leaves (decorations inherited); the leaf at tuple position ``i``
    (0-based) is labeled ``i + 1``.  The result is a labeled cotree of size
    ``k = len(leaf_ids)``; it need not be canonical even when ``t`` is.
    """
    k = len(leaf_ids)
    if k == 0:
        raise ValueError("need at least one leaf")
    seen = set()
    for v in leaf_ids:
        if not (0 <= v < t.size) or not t.is_leaf(v):
            raise ValueError(f"node {v} is not a leaf of the cotree")
        if v in seen:
            raise ValueError(f"repeated leaf id {v}")
        seen.add(v)
    if k == 1:
        b = CotreeBuilder()
        b.leaf(-1, label=1)
        return b.build()
    # node set: chosen leaves plus all pairwise FCAs
    nodes = set(leaf_ids)
    for i in range(k):
        for j in range(i + 1, k):
            nodes.add(first_common_ancestor(t, leaf_ids[i], leaf_ids[j]))
    # attach each node to its nearest proper ancestor inside the set
    up: dict[int, int] = {}
    top = None
    for v in nodes:
        u = t.parent(v)
        while u != -1 and u not in nodes:
            u = t.parent(u)
        if u == -1:
            top = v
        else:
            up[v] = u
    kids: dict[int, list[int]] = {v: [] for v in nodes}
    for v, u in up.items():
        kids[u].append(v)
    # order children by the smallest tuple position below them (deterministic,
    # computable without touching the rest of t)
    pos_of_leaf = {v: i for i, v in enumerate(leaf_ids)}
    min_pos: dict[int, int] = {}

    def _min_pos(v: int) -> int:
        if v in min_pos:
            return min_pos[v]
        stack = [(v, False)]
        while stack:
            u, done = stack.pop()
            if done:
                if u in pos_of_leaf:
                    m = pos_of_leaf[u]
                else:
                    m = min(min_pos[c] for c in kids[u])
                min_pos[u] = m
            else:
                stack.append((u, True))
                for c in kids[u]:
                    if c not in min_pos:
                        stack.append((c, False))
        return min_pos[v]

    _min_pos(top)
    b = CotreeBuilder()
    stack2: list[tuple[int, int]] = [(top, -1)]
    while stack2:
        v, parent = stack2.pop()
        if v in pos_of_leaf:
            b.leaf(parent, label=pos_of_leaf[v] + 1)
        else:
            nv = b.internal(parent, t.decoration(v))
            for c in sorted(kids[v], key=lambda c: min_pos[c], reverse=True):
                stack2.append((c, nv))
    return b.build()


def degree_vector(t: Cotree) -> list[int]:
    """Degrees in ``cograph_of(t)``, indexed like its vertices.

    Entry ``i`` is the degree of vertex ``i`` (label ``i + 1`` when labeled,
    else the ``i``-th leaf in depth-first order).  A leaf's degree is the sum
    over its 1-decorated ancestors ``a`` of ``leafcount(a) - leafcount(child
    of a towards the leaf)``, accumulated in one O(n) push-down pass.
    """
    n = t.n
    out = [0] * n
    leaves = t.leaves()
    if t.labeled:
        index = {v: t.label(v) - 1 for v in leaves}
    else:
        index = {v: i for i, v in enumerate(leaves)}
    stack: list[tuple[int, int]] = [(t.root, 0)]
    while stack:
        v, acc = stack.pop()
        d = t.decoration(v)
        if d == LEAF:
            out[index[v]] = acc
        else:
            lc = t.leaf_count(v)
            for c in t.children(v):
                extra = lc - t.leaf_count(c) if d == 1 else 0
                stack.append((c, acc + extra))
    return out


def leaf_degree(t: Cotree, leaf: int) -> int:
    """Degree of a single leaf's vertex in ``cograph_of(t)``.

    Walks the ancestor path once, so it costs O(depth) instead of the O(n)
    full pass of :func:`degree_vector`.  ``leaf`` is a node id whose
    decoration must be ``LEAF``.
    """
    if t.decoration(leaf) != LEAF:
        raise ValueError("leaf_degree expects a leaf node id")
    deg = 0
    v = leaf
    u = t.parent(v)
    while u != -1:
        if t.decoration(u) == 1:
            deg += t.leaf_count(u) - t.leaf_count(v)
        v = u
        u = t.parent(v)
    return deg


def leaf_dfs_order(
    t: Cotree, rng: Optional[random.Random] = None
) -> list[int]:
    """Leaf ids in depth-first order under a deterministic child ordering.

    By default children are ordered by the smallest leaf label they contain
    (smallest leaf id when unlabeled); passing ``rng`` shuffles each child
    list instead.
    """
    minkey: dict[int, int] = {}
    order_post: list[int] = []
    stack = [(t.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            minkey[v] = min(minkey[c] for c in t.children(v))
            order_post.append(v)
        elif t.is_leaf(v):
            minkey[v] = t.label(v) if t.labeled else v
        else:
            stack.append((v, True))
            for c in t.children(v):
                stack.append((c, False))
    out: list[int] = []
    stack2 = [t.root]
    while stack2:
        v = stack2.pop()
        if t.is_leaf(v):
            out.append(v)
        else:
            ch = list(t.children(v))
            if rng is None:
                ch.sort(key=minkey.__getitem__, reverse=True)
            else:
                rng.shuffle(ch)
            stack2.extend(ch)
    return out


# -- text format ----------------------------------------------------------------


def format_cotree(t: Cotree) -> str:
    """Cotree text: leaf = decimal label or ``*``; node = ``(d child ...)``.

    Children print in stored order, so parse/format round-trips are
    bit-exact.
    """
    parts: list[str] = []
    stack: list[object] = [t.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        v = item
        if t.is_leaf(v):
            parts.append(str(t.label(v)) if t.labeled else "*")
        else:
            parts.append(f"({t.decoration(v)}")
            stack.append(")")
            for c in reversed(t.children(v)):
                stack.append(c)
    return " ".join(parts).replace(" )", ")")


def parse_cotree(text: str) -> Cotree:
    """Parse the cotree text format (inverse of :func:`format_cotree`)."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    if not tokens:
        raise ValueError("empty cotree text")
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of cotree text")
        tok = tokens[pos]
        pos += 1
        return tok

    b = CotreeBuilder()
    # iterative descent: frames hold the builder id of the open node
    tok = take()
    frames: list[int] = []
    labeled: Optional[bool] = None

    def add_leaf(tok: str, parent: int) -> None:
        nonlocal labeled
        if tok == "*":
            if labeled is True:
                raise ValueError("mixed labeled and unlabeled leaves")
            labeled = False
            b.leaf(parent)
        else:
            try:
                lab = int(tok)
            except ValueError as exc:
                raise ValueError(f"bad leaf token {tok!r}") from exc
            if labeled is False:
                raise ValueError("mixed labeled and unlabeled leaves")
            labeled = True
            b.leaf(parent, label=lab)

    if tok == "(":
        d = take()
        if d not in ("0", "1"):
            raise ValueError(f"decoration must be 0 or 1, got {d!r}")
        frames.append(b.internal(-1, int(d)))
        while frames:
            tok = take()
            if tok == "(":
                d = take()
                if d not in ("0", "1"):
                    raise ValueError(f"decoration must be 0 or 1, got {d!r}")
                frames.append(b.internal(frames[-1], int(d)))
            elif tok == ")":
                v = frames.pop()
                if len(b.children[v]) < 2:
                    raise ValueError(
                        "internal node with fewer than 2 children"
                    )
            else:
                add_leaf(tok, frames[-1])
    elif tok == ")":
        raise ValueError("unbalanced parenthesis")
    else:
        add_leaf(tok, -1)
    if pos != len(tokens):
        raise ValueError("trailing tokens after cotree")
    t = b.build()
    t.validate()
    return t
