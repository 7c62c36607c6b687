"""Random generation of cotrees and cographs.

Four generators, all value-producing and deterministic for a fixed RNG
state:

* :func:`sample_labeled_cotree_uniform` — exactly uniform over the
  ``m_n`` labeled canonical cotrees with ``n`` leaves.
* :func:`sample_unlabeled_cotree_uniform` — exactly uniform over the
  ``v_n`` unlabeled canonical cotrees with ``n`` leaves.
* :func:`sample_boltzmann_labeled` — free Boltzmann sampler for the
  labeled class at parameter ``x <= rho``, rejected until the size lands
  in a window around a target; conditioned on its size the output is
  uniform.
* :func:`sample_binary_decorated` — uniform plane labeled binary tree
  with i.i.d. internal decorations, the discrete approximation scheme
  behind degree and induced-subtree limit laws.

Uniform samplers use two interchangeable backends.  For ``n`` up to
:data:`EXACT_SIZE_CUTOFF` every discrete choice is made by inverse
transform over exact big-integer weights, so uniformity holds with no
floating-point caveat.  For larger ``n`` the weights come from scaled
floating-point count tables with certified error bands: each choice
compares a fresh 128-bit uniform integer against lower/upper enclosures
of the cumulative weight ratio, escalates to extended precision when the
comparison falls inside the error band, and raises
:class:`PrecisionExhausted` rather than return a biased decision.  The
only approximation left is the 128-bit discretisation of the uniform
variable, a total-variation error below ``2**-100`` per draw.

RNG plumbing: samplers accept a :class:`random.Random`.  Use
:func:`make_rng` to build one from a 64-bit seed and :func:`spawn_rngs`
to split independent streams for parallel Monte Carlo workers (streams
are derived through ``numpy.random.SeedSequence`` spawning, so workers
never share state).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import counts as _counts
from .cotree import LEAF, CanonicalCotree, Cotree, CotreeBuilder

__all__ = [
    "EXACT_SIZE_CUTOFF",
    "IterationCapExceeded",
    "PrecisionExhausted",
    "SampleConfig",
    "binary_degree_samples",
    "flip_involution",
    "make_rng",
    "rank_order",
    "sample",
    "sample_binary_decorated",
    "sample_boltzmann_labeled",
    "sample_labeled_cotree_uniform",
    "sample_labeled_root_child_sizes",
    "sample_unlabeled_cotree_uniform",
    "sample_unlabeled_root_child_sizes",
    "spawn_rngs",
]

#: Largest size handled by the big-integer backend under ``method="auto"``.
EXACT_SIZE_CUTOFF = 150

_RHO = 2.0 * math.log(2.0) - 1.0
_TWO128_F = float(1 << 128)
_TWO128_LD = np.longdouble(2.0) ** 128


class PrecisionExhausted(RuntimeError):
    """A certified random choice stayed ambiguous at every precision."""


class IterationCapExceeded(RuntimeError):
    """Boltzmann rejection ran out of attempts; the window is impractical."""


# ---------------------------------------------------------------------------
# RNG plumbing


def make_rng(seed: int | None = None) -> random.Random:
    """Return a ``random.Random`` derived from ``seed``.

    ``None`` gives an OS-seeded generator.  Integer seeds are stretched
    through ``numpy.random.SeedSequence`` so that nearby seeds yield
    unrelated streams.
    """
    if seed is None:
        return random.Random()
    ss = np.random.SeedSequence(seed)
    return random.Random(int.from_bytes(ss.generate_state(4, np.uint64).tobytes(), "big"))


def spawn_rngs(seed: int, count: int) -> list[random.Random]:
    """Split ``seed`` into ``count`` independent generator streams."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [
        random.Random(int.from_bytes(c.generate_state(4, np.uint64).tobytes(), "big"))
        for c in children
    ]


_KINDS = ("labeled-exact", "unlabeled-exact", "labeled-boltzmann", "binary-decorated")


@dataclass(frozen=True)
class SampleConfig:
    """Declarative description of one sampling run.

    ``n`` is the target size (the leaf count ``k`` for the
    binary-decorated kind), ``window`` the relative size tolerance used
    by Boltzmann rejection, and ``p`` the decoration bias ``P(0)`` of
    the binary-decorated kind.  Equal configs produce identical trees.
    """

    n: int
    seed: int = 0
    kind: str = "labeled-exact"
    window: float = 0.1
    p: float = 0.5

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit nonnegative integer")
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}")
        if not 0.0 <= self.window < 1.0:
            raise ValueError("window must lie in [0, 1)")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")


def sample(config: SampleConfig) -> Cotree:
    """Draw one tree according to ``config`` (deterministic in the seed)."""
    rng = make_rng(config.seed)
    if config.kind == "labeled-exact":
        return sample_labeled_cotree_uniform(config.n, rng)
    if config.kind == "unlabeled-exact":
        return sample_unlabeled_cotree_uniform(config.n, rng)
    if config.kind == "labeled-boltzmann":
        return sample_boltzmann_labeled(config.n, rng, window=config.window)
    return sample_binary_decorated(config.n, config.p, rng)


def _use_exact(method: str, n: int) -> bool:
    if method == "auto":
        return n <= EXACT_SIZE_CUTOFF
    if method == "exact":
        return True
    if method == "float":
        return False
    raise ValueError('method must be "auto", "exact" or "float"')


# ---------------------------------------------------------------------------
# Certified inverse transform over scaled floating-point weights
#
# A choice with true probabilities w_i / W is made by comparing a uniform
# 128-bit integer X against the running cumulative ratio.  Floating-point
# tables carry a relative error band; a step decides only when X falls
# strictly outside the enclosure [ratio*(1-slack), ratio*(1+slack)] of the
# true prefix.  Because the enumeration is exhaustive, the final item needs
# no certificate: reaching it proves X lies in its mass.


def _walk_once(X, total, gen, band, ulp, two128):
    cum = None
    t = 0
    prev = None
    for item in gen:
        if prev is not None:
            key, w = prev
            cum = w if cum is None else cum + w
            t += 1
            slack = band + 8.0 * (t + 4) * ulp
            ratio = cum / total
            if X < int(ratio * (1.0 - slack) * two128):
                return key, True
            if X <= int(ratio * (1.0 + slack) * two128):
                return key, False
        prev = item
    return prev[0], True


def _certified_choice(rng: random.Random, factories, what: str):
    X = rng.getrandbits(128)
    for factory in factories:
        total, gen, band, ulp, two128 = factory()
        key, decided = _walk_once(X, total, gen, band, ulp, two128)
        if decided:
            return key
    raise PrecisionExhausted(
        f"choice of {what} fell inside the numerical error band at every "
        "available precision"
    )


# ---------------------------------------------------------------------------
# Labeled uniform sampler
#
# A labeled tree with s >= 2 leaves is an unordered set of >= 2 subtrees;
# splitting off the piece that contains the smallest label gives the
# bijection  tree(s)  <->  (r, piece on s-r labels, forest of >= 1 trees on
# the remaining r labels)  with weight  C(s-1, r) * ell_{s-r} * E_r, where
# E_r counts forests with >= 1 component (E_0 = 1 by convention).  The same
# split with r >= 1 decomposes a >= 2-forest.  Sampling sizes first and
# assigning a uniform label permutation afterwards reproduces the uniform
# labeled law exactly.


def _draw_rest_labeled_exact(s: int, allow_zero: bool, rng: random.Random) -> int:
    tab = _counts.labeled_exact(s)
    ell, E = tab.ell, tab.E
    if allow_zero:
        total = E[s]
        r, binom = 0, 1
    else:
        total = ell[s]
        r, binom = 1, s - 1
    x = rng.randrange(total)
    cum = 0
    while True:
        cum += binom * ell[s - r] * E[r]
        if x < cum:
            return r
        r += 1
        binom = binom * (s - r) // r


def _rest_factories_labeled(s: int, allow_zero: bool):
    def make(getter, two128):
        def factory():
            tab = getter(s)
            A, F, T = tab.A, tab.F, tab.T
            total = s * F[s] if allow_zero else s * T[s]
            r0 = 0 if allow_zero else 1

            def gen():
                for r in range(r0, s):
                    yield r, A[s - r] * F[r]

            return total, gen(), tab.band, tab.ulp, two128

        return factory

    return (
        make(_counts.labeled_scaled, _TWO128_F),
        make(_counts.labeled_scaled_longdouble, _TWO128_LD),
    )


def _draw_rest_labeled(s: int, allow_zero: bool, rng: random.Random, exact: bool) -> int:
    # Small sub-splits always go through the big-integer backend: both
    # backends realize the same conditional law, and exact tables are
    # cheap at these sizes.
    if exact or s <= EXACT_SIZE_CUTOFF:
        return _draw_rest_labeled_exact(s, allow_zero, rng)
    return _certified_choice(
        rng, _rest_factories_labeled(s, allow_zero), f"labeled split at size {s}"
    )


def _grow_labeled_shape(n: int, rng: random.Random, exact: bool) -> CotreeBuilder:
    """Build the undecorated, unlabeled plane shape of a uniform labeled tree."""
    b = CotreeBuilder()
    if n == 1:
        b.leaf(-1)
        return b
    root = b.internal(-1)
    # (0, s, parent): expand a tree with s leaves under parent
    # (1, s, parent): expand a >=2-forest of total size s under parent
    # (2, s, parent): expand a >=1-forest of total size s under parent
    stack = [(1, n, root)]
    while stack:
        mode, s, parent = stack.pop()
        if mode == 0:
            if s == 1:
                b.leaf(parent)
            else:
                v = b.internal(parent)
                stack.append((1, s, v))
        elif mode == 1:
            r = _draw_rest_labeled(s, False, rng, exact)
            stack.append((0, s - r, parent))
            stack.append((2, r, parent))
        else:
            r = _draw_rest_labeled(s, True, rng, exact)
            stack.append((0, s - r, parent))
            if r:
                stack.append((2, r, parent))
    return b


def sample_labeled_cotree_uniform(
    n: int,
    rng: random.Random | None = None,
    *,
    connected: bool = False,
    method: str = "auto",
) -> CanonicalCotree:
    """Draw a uniform labeled canonical cotree with ``n`` leaves.

    With ``connected=True`` the root decoration is forced to 1, which
    conditions the associated cograph on being connected (for ``n >= 2``
    exactly half of all trees are kept, so uniformity is preserved).
    ``method`` selects the counting backend: ``"exact"`` (big integers),
    ``"float"`` (certified scaled tables) or ``"auto"``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if rng is None:
        rng = make_rng()
    exact = _use_exact(method, n)
    if exact:
        _counts.labeled_exact(n)
    else:
        _counts.labeled_scaled(n)
    b = _grow_labeled_shape(n, rng, exact)
    if n > 1:
        b.alternate_decorations(1 if connected else rng.getrandbits(1))
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    b.set_labels_by_dfs(labels)
    return b.build(CanonicalCotree)


def sample_labeled_root_child_sizes(
    n: int, rng: random.Random | None = None, *, method: str = "auto"
) -> list[int]:
    """Sizes of the root subtrees of a uniform labeled cotree, ``n >= 2``.

    Equivalent in law to reading the root child sizes off
    :func:`sample_labeled_cotree_uniform` (sizes are independent of the
    decorations), but skips building the tree.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if rng is None:
        rng = make_rng()
    exact = _use_exact(method, n)
    if exact:
        _counts.labeled_exact(n)
    else:
        _counts.labeled_scaled(n)
    sizes = []
    r = _draw_rest_labeled(n, False, rng, exact)
    sizes.append(n - r)
    s = r
    while s:
        r = _draw_rest_labeled(s, True, rng, exact)
        sizes.append(s - r)
        s = r
    return sizes


# ---------------------------------------------------------------------------
# Unlabeled uniform sampler
#
# The multiset of subtrees of an unlabeled tree is sampled by the classical
# recursive method for Polya SET/MSET operators: a cell (k, d) with d | k
# removes j = k/d copies of one uniform tree with d leaves and recurses on
# the remaining size s - k, with weight d * u_d * w_{s-k} out of the total
# s * w_s (w = multiset counts, u = tree counts).  Conditioning the root
# multiset on >= 2 components removes exactly the cell (s, s), whose mass
# s * u_s is the single-tree case.


def _draw_cell_unlabeled_exact(s: int, skip_single: bool, rng: random.Random):
    tab = _counts.unlabeled_exact(s)
    u, w = tab.u, tab.w
    total = s * w[s] - (s * u[s] if skip_single else 0)
    x = rng.randrange(total)
    cum = 0
    for k in range(s, 0, -1):
        rest = w[s - k]
        for d in _counts.divisors_desc(k):
            if skip_single and k == s and d == s:
                continue
            cum += d * u[d] * rest
            if x < cum:
                return k, d
    raise AssertionError("unreachable: exact cell walk exhausted")


def _cell_factories_unlabeled(s: int, skip_single: bool):
    def make(getter, two128):
        def factory():
            tab = getter(s)
            Tu, Wu, qpow = tab.Tu, tab.Wu, tab.qpow
            total = s * Tu[s] if skip_single else s * Wu[s]

            def gen():
                for k in range(s, 0, -1):
                    rest = Wu[s - k]
                    for d in _counts.divisors_desc(k):
                        if skip_single and k == s and d == s:
                            continue
                        yield (k, d), d * Tu[d] * qpow[k - d] * rest

            return total, gen(), tab.band, tab.ulp, two128

        return factory

    return (
        make(_counts.unlabeled_scaled, _TWO128_F),
        make(_counts.unlabeled_scaled_longdouble, _TWO128_LD),
    )


def _draw_cell_unlabeled(s: int, skip_single: bool, rng: random.Random, exact: bool):
    if exact or s <= EXACT_SIZE_CUTOFF:
        return _draw_cell_unlabeled_exact(s, skip_single, rng)
    return _certified_choice(
        rng, _cell_factories_unlabeled(s, skip_single), f"multiset cell at size {s}"
    )


def sample_unlabeled_cotree_uniform(
    n: int,
    rng: random.Random | None = None,
    *,
    connected: bool = False,
    method: str = "auto",
) -> CanonicalCotree:
    """Draw a uniform unlabeled canonical cotree with ``n`` leaves.

    ``connected=True`` forces the root decoration to 1 (the associated
    unlabeled cograph is then connected).  ``method`` as in
    :func:`sample_labeled_cotree_uniform`.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if rng is None:
        rng = make_rng()
    exact = _use_exact(method, n)
    if exact:
        _counts.unlabeled_exact(n)
    else:
        _counts.unlabeled_scaled(n)
    b = CotreeBuilder()
    if n == 1:
        b.leaf(-1)
        return b.build(CanonicalCotree)
    root = b.internal(-1)
    # (1, s, parent, first): draw multiset cells for remaining size s;
    #   first marks the full child multiset of a node (must have >= 2 parts).
    # (2, src, parent, j): clone the finished subtree src j more times.
    stack: list[tuple] = [(1, n, root, True)]
    while stack:
        item = stack.pop()
        if item[0] == 1:
            _, s, parent, first = item
            if s == 0:
                continue
            k, d = _draw_cell_unlabeled(s, first, rng, exact)
            j = k // d
            stack.append((1, s - k, parent, False))
            if d == 1:
                for _ in range(j):
                    b.leaf(parent)
            else:
                v = b.internal(parent)
                if j > 1:
                    stack.append((2, v, parent, j - 1))
                stack.append((1, d, v, True))
        else:
            _, src, parent, j = item
            for _ in range(j):
                b.copy_subtree(src, parent)
    b.alternate_decorations(1 if connected else rng.getrandbits(1))
    return b.build(CanonicalCotree)


def sample_unlabeled_root_child_sizes(
    n: int, rng: random.Random | None = None, *, method: str = "auto"
) -> list[int]:
    """Sizes of the root subtrees of a uniform unlabeled cotree, ``n >= 2``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if rng is None:
        rng = make_rng()
    exact = _use_exact(method, n)
    if exact:
        _counts.unlabeled_exact(n)
    else:
        _counts.unlabeled_scaled(n)
    sizes: list[int] = []
    s, first = n, True
    while s:
        k, d = _draw_cell_unlabeled(s, first, rng, exact)
        sizes.extend([d] * (k // d))
        s -= k
        first = False
    return sizes


# ---------------------------------------------------------------------------
# Boltzmann sampler


def _labeled_gf_value(x: float) -> float:
    """L(x) for 0 < x <= rho, by partial sums of the scaled count table."""
    if x >= _RHO:
        return math.log(2.0)
    limit = 16384
    tab = _counts.labeled_scaled(min(limit, 4096))
    ratio = x / _counts.RHAT
    total = 0.0
    rpow = 1.0
    m = 0
    while True:
        m += 1
        if m >= len(tab.T):
            if len(tab.T) > limit:
                break
            tab = _counts.labeled_scaled(2 * len(tab.T))
        rpow *= ratio
        term = float(tab.T[m]) * rpow
        total += term
        if m > 8 and term < 1e-18 * total:
            break
    return total


def _poisson_ge2(rng: random.Random, lam: float, p0: float) -> int:
    """Poisson(lam) conditioned on >= 2, by rejection (p0 = exp(-lam))."""
    while True:
        u = rng.random()
        k = 0
        p = p0
        acc = p
        while u >= acc and k < 400:
            k += 1
            p *= lam / k
            acc += p
        if k >= 2:
            return k


def sample_boltzmann_labeled(
    n: int,
    rng: random.Random | None = None,
    *,
    x: float | None = None,
    window: float = 0.1,
    max_attempts: int | None = None,
) -> CanonicalCotree:
    """Free Boltzmann sampler at parameter ``x``, windowed around size ``n``.

    Each attempt grows a tree where a node is a leaf with probability
    ``x / L(x)`` and otherwise has ``Poisson(L(x))``-many children
    conditioned on >= 2; attempts are rejected until the leaf count lands
    in ``[n(1-window), n(1+window)]``.  Conditioned on its size the
    output is exactly the uniform labeled law of that size.  ``x``
    defaults to the singularity ``rho = 2 log 2 - 1``, where sizes decay
    like ``m**-1.5`` and the window is hit in ``O(sqrt(n)/window)``
    attempts.  Raises :class:`IterationCapExceeded` when the attempt
    budget (configurable via ``max_attempts``) is exhausted.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if window <= 0.0:
        raise ValueError("window must be positive")
    if rng is None:
        rng = make_rng()
    if x is None:
        x = _RHO
    if not 0.0 < x <= _RHO * (1.0 + 1e-12):
        raise ValueError(f"x must lie in (0, rho] with rho = {_RHO!r}")
    x = min(x, _RHO)
    lam = _labeled_gf_value(x)
    p_leaf = x / lam
    p0 = math.exp(-lam)
    lo = max(1, math.ceil(n * (1.0 - window)))
    hi = max(lo, math.floor(n * (1.0 + window)))
    if max_attempts is None:
        # P(window hit) ~ 0.5 * window / sqrt(n) at x = rho; budget for a
        # e**-100 failure probability, capped to keep worst cases bounded.
        p_est = 0.5 * window / math.sqrt(n) * (x / _RHO) ** lo
        max_attempts = min(5_000_000, 1000 + int(100.0 / max(p_est, 2e-5)))
    for _ in range(max_attempts):
        b = CotreeBuilder()
        leaves = 0
        stack = [-1]
        overshoot = False
        while stack:
            parent = stack.pop()
            if rng.random() < p_leaf:
                b.leaf(parent)
                leaves += 1
                if leaves > hi:
                    overshoot = True
                    break
            else:
                v = b.internal(parent)
                for _ in range(_poisson_ge2(rng, lam, p0)):
                    stack.append(v)
        if overshoot or leaves < lo:
            continue
        if leaves > 1:
            b.alternate_decorations(rng.getrandbits(1))
        labels = list(range(1, leaves + 1))
        rng.shuffle(labels)
        b.set_labels_by_dfs(labels)
        return b.build(CanonicalCotree)
    raise IterationCapExceeded(
        f"no size in [{lo}, {hi}] after {max_attempts} attempts; "
        "widen the window or raise max_attempts"
    )


# ---------------------------------------------------------------------------
# Plane labeled binary trees with i.i.d. decorations


def _remy_arrays(k: int, p: float, rng: random.Random):
    """Grow a uniform plane labeled binary tree by leaf insertion.

    Returns ``(par, dec, child0, child1, root, leaves)`` where ``leaves``
    lists leaf node ids in label order 1..k and ``dec`` holds LEAF for
    leaves and an i.i.d. 0/1 decoration (0 with probability ``p``) for
    internal nodes.  Each of the ``(2k-2)!/(k-1)!`` plane labeled shapes
    arises from exactly one insertion history, so the shape is uniform.
    """
    par = [-1]
    dec = [LEAF]
    child0 = [0]
    child1 = [0]
    nodes = [0]
    leaves = [0]
    root = 0
    for i in range(2, k + 1):
        v = nodes[rng.randrange(len(nodes))]
        side = rng.getrandbits(1)
        d = 0 if rng.random() < p else 1
        u = len(par)
        w = u + 1
        pv = par[v]
        par.append(pv)
        dec.append(d)
        par.append(u)
        dec.append(LEAF)
        child0.extend((0, 0))
        child1.extend((0, 0))
        if side:
            child0[u], child1[u] = w, v
        else:
            child0[u], child1[u] = v, w
        if pv < 0:
            root = u
        elif child0[pv] == v:
            child0[pv] = u
        else:
            child1[pv] = u
        par[v] = u
        nodes.append(u)
        nodes.append(w)
        leaves.append(w)
    return par, dec, child0, child1, root, leaves


def sample_binary_decorated(k: int, p: float, rng: random.Random | None = None) -> Cotree:
    """Uniform plane labeled binary tree with ``k`` leaves, i.i.d. decorations.

    Internal nodes are decorated 0 with probability ``p`` independently;
    leaves are labeled 1..k in insertion order and the plane (left/right)
    structure is retained.  Forgetting the plane order yields the uniform
    labeled binary cotree with i.i.d. decorations.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if rng is None:
        rng = make_rng()
    b = CotreeBuilder()
    if k == 1:
        b.leaf(-1, label=1)
        return b.build(Cotree)
    par, dec, child0, child1, root, _ = _remy_arrays(k, p, rng)
    labels = [0] * len(par)
    lbl = 0
    for v, d in enumerate(dec):
        if d == LEAF:
            lbl += 1
            labels[v] = lbl
    stack = [(root, -1)]
    while stack:
        v, parent = stack.pop()
        if dec[v] == LEAF:
            b.leaf(parent, label=labels[v])
        else:
            nid = b.internal(parent, dec[v])
            stack.append((child1[v], nid))
            stack.append((child0[v], nid))
    return b.build(Cotree)


def flip_involution(t: Cotree, leaf_label: int) -> Cotree:
    """Flip the decorations of the ancestors keeping ``leaf_label`` right.

    For every ancestor whose right subtree contains the given leaf, the
    decoration is toggled; shape, plane order and labels are unchanged.
    Applying the map twice returns the original tree.
    """
    v = t.leaf_of_label(leaf_label)
    flips = set()
    while True:
        u = t.parent(v)
        if u < 0:
            break
        cs = t.children(u)
        if len(cs) != 2:
            raise ValueError("flip_involution requires a binary tree")
        if cs[1] == v:
            flips.add(u)
        v = u
    b = CotreeBuilder()
    stack = [(t.root, -1)]
    while stack:
        node, parent = stack.pop()
        if t.is_leaf(node):
            b.leaf(parent, label=t.label(node))
        else:
            d = t.decoration(node)
            if node in flips:
                d ^= 1
            nid = b.internal(parent, d)
            cs = t.children(node)
            if len(cs) != 2:
                raise ValueError("flip_involution requires a binary tree")
            stack.append((cs[1], nid))
            stack.append((cs[0], nid))
    return b.build(type(t))


def rank_order(t: Cotree) -> list[int]:
    """Leaf labels in left-to-right order after mirroring 1-decorated nodes.

    All decorations 0 gives the plain depth-first leaf order; all 1 gives
    its reverse.  The position of a leaf in this order, minus one, equals
    its degree in the associated cograph after :func:`flip_involution` at
    that leaf.
    """
    order: list[int] = []
    stack = [t.root]
    while stack:
        v = stack.pop()
        if t.is_leaf(v):
            order.append(t.label(v))
            continue
        cs = t.children(v)
        if len(cs) != 2:
            raise ValueError("rank_order requires a binary tree")
        if t.decoration(v) == 0:
            stack.append(cs[1])
            stack.append(cs[0])
        else:
            stack.append(cs[0])
            stack.append(cs[1])
    return order


def binary_degree_samples(
    k: int, reps: int, p: float, rng: random.Random | None = None
) -> list[int]:
    """Cograph degrees of a uniform leaf over ``reps`` independent trees.

    Each repetition draws the same tree law as
    :func:`sample_binary_decorated` (identical RNG consumption), picks a
    uniform leaf, and accumulates the leaf's degree in the associated
    cograph directly on the insertion arrays: the degree is the number
    of other leaves whose first common ancestor with the chosen leaf is
    decorated 1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if rng is None:
        rng = make_rng()
    out: list[int] = []
    for _ in range(reps):
        if k == 1:
            out.append(0)
            continue
        par, dec, child0, child1, root, leaves = _remy_arrays(k, p, rng)
        ell = leaves[rng.randrange(k)]
        lc = [0] * len(par)
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if dec[v] == LEAF:
                lc[v] = 1
            elif done:
                lc[v] = lc[child0[v]] + lc[child1[v]]
            else:
                stack.append((v, True))
                stack.append((child0[v], False))
                stack.append((child1[v], False))
        deg = 0
        v = ell
        while par[v] >= 0:
            u = par[v]
            if dec[u] == 1:
                deg += lc[u] - lc[v]
            v = u
        out.append(deg)
    return out
