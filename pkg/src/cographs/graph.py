"""Plain graph values and the operations cographs are composed from.

Graphs are immutable and stored as one adjacency bitset per vertex (a Python
integer whose bit ``j`` says whether ``j`` is a neighbour).  This makes
complements, joins and component sweeps word-parallel, which is what the
statistics workloads are dominated by.  The practical size cap for dense
operations is ``N_CAP`` (5*10**4) vertices; larger experiments work on
cotrees and never materialise a matrix.

The class is named :class:`Cograph` because every graph built or consumed by
this package is one; cograph-ness itself is *not* enforced here (that is the
job of :func:`cographs.cotree.canonical_cotree_of`, which reports a witness
when it fails).
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Cograph",
    "SizeLimitError",
    "disjoint_union",
    "join",
    "complement",
    "connected_components",
    "induced_subgraph",
    "canonical_form_small",
    "parse_edge_list",
    "format_edge_list",
]

#: Practical vertex cap for dense bit-matrix operations.
N_CAP = 50_000

#: Exhaustive canonicalisation cap (n! permutations are enumerated).
CANONICAL_CAP = 10


class SizeLimitError(ValueError):
    """An operation was asked to run beyond its documented size limits."""


class Cograph:
    """An immutable simple graph on vertices ``0..n-1`` with bitset rows.

    ``rows[i]`` has bit ``j`` set iff ``i`` and ``j`` are adjacent; rows are
    symmetric with zero diagonal by construction.
    """

    __slots__ = ("_n", "_rows", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex count must be a non-negative int, got {n!r}")
        if n > N_CAP:
            raise SizeLimitError(f"n={n} exceeds the dense-graph cap {N_CAP}")
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            if i == j:
                raise ValueError(f"self-loop ({i},{i}) not allowed")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        self._n = n
        self._rows = tuple(rows)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _from_rows(cls, rows: Sequence[int]) -> "Cograph":
        """Trusted fast path: rows must already be symmetric, zero-diagonal."""
        g = object.__new__(cls)
        g._n = len(rows)
        g._rows = tuple(rows)
        g._hash = None
        return g

    @classmethod
    def empty(cls, n: int) -> "Cograph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Cograph":
        if n > N_CAP:
            raise SizeLimitError(f"n={n} exceeds the dense-graph cap {N_CAP}")
        full = (1 << n) - 1
        return cls._from_rows([full ^ (1 << i) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Cograph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self._rows[i] >> j & 1)

    def row(self, i: int) -> int:
        """Adjacency bitset of vertex ``i``."""
        return self._rows[i]

    def degree(self, i: int) -> int:
        return self._rows[i].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges ``(i, j)`` with ``i < j`` in lexicographic order."""
        for i, r in enumerate(self._rows):
            r >>= i + 1
            while r:
                low = r & -r
                yield (i, i + low.bit_length())
                r ^= low

    def to_numpy(self):
        """Dense uint8 adjacency matrix (requires n small enough to afford n**2 bytes)."""
        import numpy as np

        n = self._n
        out = np.zeros((n, n), dtype=np.uint8)
        for i, r in enumerate(self._rows):
            if r:
                byts = r.to_bytes((n + 7) // 8, "little")
                bits = np.unpackbits(
                    np.frombuffer(byts, dtype=np.uint8), bitorder="little"
                )[:n]
                out[i] = bits
        return out

    # -- structural operations ----------------------------------------------

    def disjoint_union(self, other: "Cograph") -> "Cograph":
        n1 = self._n
        rows = list(self._rows) + [r << n1 for r in other._rows]
        return Cograph._from_rows(rows)

    def join(self, other: "Cograph") -> "Cograph":
        n1, n2 = self._n, other._n
        mask1 = (1 << n1) - 1
        mask2 = ((1 << n2) - 1) << n1
        rows = [r | mask2 for r in self._rows]
        rows += [(r << n1) | mask1 for r in other._rows]
        return Cograph._from_rows(rows)

    def complement(self) -> "Cograph":
        n = self._n
        full = (1 << n) - 1
        return Cograph._from_rows(
            [r ^ full ^ (1 << i) for i, r in enumerate(self._rows)]
        )

    def connected_components(self) -> list[list[int]]:
        """Partition of ``0..n-1`` into components, each sorted, ordered by minimum."""
        n = self._n
        unseen = (1 << n) - 1
        parts: list[list[int]] = []
        while unseen:
            seed = unseen & -unseen
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= self._rows[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~comp & unseen
                comp |= frontier
            unseen &= ~comp
            parts.append(_bits_to_list(comp))
        return parts

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.connected_components()) == 1

    def induced_subgraph(self, vertices: Sequence[int]) -> "Cograph":
        """Induced subgraph on an ordered tuple of vertex ids.

        Repetitions are allowed: two positions holding the *same* vertex are
        never adjacent in the result (each occurrence is a fresh copy).
        """
        n = self._n
        for v in vertices:
            if not (0 <= v < n):
                raise ValueError(f"vertex id {v} out of range for n={n}")
        k = len(vertices)
        rows = [0] * k
        for a in range(k):
            va = vertices[a]
            ra = self._rows[va]
            for b in range(a + 1, k):
                vb = vertices[b]
                if va != vb and (ra >> vb) & 1:
                    rows[a] |= 1 << b
                    rows[b] |= 1 << a
        return Cograph._from_rows(rows)

    # -- dunder plumbing ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cograph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Cograph(n={self._n}, edges={self.edge_count})"


def _bits_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# -- module-level functional aliases ------------------------------------------


def disjoint_union(g1: Cograph, g2: Cograph) -> Cograph:
    return g1.disjoint_union(g2)


def join(g1: Cograph, g2: Cograph) -> Cograph:
    return g1.join(g2)


def complement(g: Cograph) -> Cograph:
    return g.complement()


def connected_components(g: Cograph) -> list[list[int]]:
    return g.connected_components()


def induced_subgraph(g: Cograph, vertices: Sequence[int]) -> Cograph:
    return g.induced_subgraph(vertices)


def canonical_form_small(g: Cograph) -> bytes:
    """Canonical byte string of a small graph's isomorphism class.

    Two graphs map to the same string iff they are isomorphic.  Computed as
    the lexicographically minimal upper-triangle adjacency bit string over
    all vertex permutations, so the cost is ``n! * n**2 / 2``; the size is
    capped at ``n <= 10`` (and intended use is ``k <= 7`` bucket keys).
    """
    n = g.n
    if n > CANONICAL_CAP:
        raise SizeLimitError(
            f"canonical_form_small is capped at n <= {CANONICAL_CAP}, got n={n}"
        )
    if n <= 1:
        return bytes([n])
    rows = g._rows
    nbits = n * (n - 1) // 2
    best = None
    for perm in permutations(range(n)):
        word = 0
        for a in range(n):
            ra = rows[perm[a]]
            for b in range(a + 1, n):
                word = (word << 1) | (ra >> perm[b] & 1)
            if best is not None:
                built = (a + 1) * (2 * n - a - 2) // 2
                if word > best >> (nbits - built):
                    word = -1
                    break
        if word < 0:
            continue
        if best is None or word < best:
            best = word
    return bytes([n]) + best.to_bytes((nbits + 7) // 8, "big")


# -- edge-list text format -----------------------------------------------------


def format_edge_list(g: Cograph) -> str:
    """Edge-list text: first line ``n``, then one ``i j`` per line, 0-indexed, i<j."""
    lines = [str(g.n)]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Cograph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"first line must be the vertex count, got {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {ln!r}")
        i, j = int(parts[0]), int(parts[1])
        edges.append((i, j))
    return Cograph(n, edges)
