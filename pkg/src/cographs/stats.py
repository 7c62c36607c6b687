"""Statistics on cographs and cotrees, and their empirical distributions.

The central type is :class:`EmpiricalDistribution`, which holds either a
sorted sequence of real samples (degree laws on [0, 1]) or keyed counts
(discrete laws such as induced-cotree buckets or vertex connectivity).
On top of it sit the metric operations used to compare empirical laws
against limit laws: exact Wasserstein-1 distance to the uniform
distribution, total variation between keyed laws, and chi-square
goodness-of-fit helpers.

Monte Carlo conventions: every keyed probability ships with a binomial
standard error; trials can be distributed across workers holding RNG
streams from :func:`cographs.samplers.spawn_rngs`, with results merged
through :meth:`EmpiricalDistribution.merge` (an associative count/sample
union, deterministic for a fixed seed and partition).
"""

from __future__ import annotations

import math
import random
from collections import Counter
from collections.abc import Mapping
from typing import Callable, Optional, Union

import numpy as np
from scipy.stats import chi2 as _chi2

from .cotree import Cotree, degree_vector, induced_cotree
from .graph import Cograph, SizeLimitError, canonical_form_small
from .samplers import make_rng, sample_labeled_root_child_sizes, sample_unlabeled_root_child_sizes
from .series import LimitLaw

__all__ = [
    "DisconnectedInput",
    "EmptyDistribution",
    "EmpiricalDistribution",
    "binary_induced_keys",
    "chi_square_uniform",
    "degree_distribution",
    "empirical_induced_distribution",
    "empirical_kappa_distribution",
    "subgraph_density",
    "total_variation",
    "vertex_connectivity",
    "wasserstein1_vs_uniform",
]


class DisconnectedInput(ValueError):
    """The operation requires a connected cograph."""


class EmptyDistribution(ValueError):
    """The operation requires at least one sample."""


class EmpiricalDistribution:
    """Either a sorted sequence of real samples or keyed counts.

    Construct through :meth:`from_samples` or :meth:`from_counts`.
    Supports totals, per-key probabilities with binomial standard
    errors, and an associative :meth:`merge`.
    """

    __slots__ = ("_samples", "_counts", "_total", "_support")

    def __init__(self) -> None:
        raise TypeError("use EmpiricalDistribution.from_samples or .from_counts")

    @classmethod
    def _make(cls, samples, counts, total, support):
        self = object.__new__(cls)
        self._samples = samples
        self._counts = counts
        self._total = total
        self._support = support
        return self

    @classmethod
    def from_samples(
        cls, samples, support: Optional[tuple[float, float]] = None
    ) -> "EmpiricalDistribution":
        """Real-valued distribution; samples are kept sorted.

        With ``support=(lo, hi)`` every sample is validated to lie in the
        closed interval.
        """
        xs = sorted(float(x) for x in samples)
        if support is not None:
            lo, hi = support
            if xs and (xs[0] < lo or xs[-1] > hi):
                raise ValueError(f"sample outside declared support [{lo}, {hi}]")
        return cls._make(tuple(xs), None, len(xs), support)

    @classmethod
    def from_counts(cls, counts: Mapping) -> "EmpiricalDistribution":
        """Keyed distribution from a mapping key -> nonnegative count."""
        c = Counter()
        for k, v in counts.items():
            v = int(v)
            if v < 0:
                raise ValueError("counts must be nonnegative")
            if v:
                c[k] = v
        return cls._make(None, c, sum(c.values()), None)

    # -- shared ----------------------------------------------------------
    @property
    def total(self) -> int:
        return self._total

    @property
    def is_keyed(self) -> bool:
        return self._counts is not None

    def merge(self, other: "EmpiricalDistribution") -> "EmpiricalDistribution":
        """Associative union of two distributions of the same flavor."""
        if self.is_keyed != other.is_keyed:
            raise ValueError("cannot merge keyed with real-valued distributions")
        if self.is_keyed:
            c = Counter(self._counts)
            c.update(other._counts)
            return EmpiricalDistribution._make(None, c, self._total + other._total, None)
        support = self._support if self._support == other._support else None
        xs = sorted(self._samples + other._samples)
        return EmpiricalDistribution._make(
            tuple(xs), None, len(xs), support
        )

    # -- keyed view --------------------------------------------------------
    def count(self, key) -> int:
        if not self.is_keyed:
            raise ValueError("not a keyed distribution")
        return self._counts.get(key, 0)

    def probability(self, key) -> float:
        if not self.is_keyed:
            raise ValueError("not a keyed distribution")
        if self._total == 0:
            raise EmptyDistribution("no trials recorded")
        return self._counts.get(key, 0) / self._total

    def stderr(self, key) -> float:
        """Binomial standard error of ``probability(key)``."""
        p = self.probability(key)
        return math.sqrt(p * (1.0 - p) / self._total)

    def items(self) -> list[tuple]:
        """Keyed (key, count) pairs, sorted by key."""
        if not self.is_keyed:
            raise ValueError("not a keyed distribution")
        return sorted(self._counts.items())

    def probabilities(self) -> dict:
        """Keyed probabilities as a plain dict."""
        if not self.is_keyed:
            raise ValueError("not a keyed distribution")
        if self._total == 0:
            return {}
        return {k: v / self._total for k, v in self._counts.items()}

    # -- real-valued view ---------------------------------------------------
    @property
    def samples(self) -> tuple[float, ...]:
        if self.is_keyed:
            raise ValueError("not a real-valued distribution")
        return self._samples

    def mean(self) -> float:
        if self.is_keyed:
            if self._total == 0:
                raise EmptyDistribution("no trials recorded")
            return sum(k * v for k, v in self._counts.items()) / self._total
        if not self._samples:
            raise EmptyDistribution("no samples recorded")
        return math.fsum(self._samples) / len(self._samples)

    def __repr__(self) -> str:
        flavor = "keyed" if self.is_keyed else "samples"
        return f"EmpiricalDistribution({flavor}, total={self._total})"


# ---------------------------------------------------------------------------
# Cotree statistics


def vertex_connectivity(t: Cotree) -> int:
    """Vertex connectivity of the (connected) cograph of ``t``.

    For a connected cograph on ``n >= 2`` vertices this is ``n`` minus
    the largest leaf count among the root subtrees; the same formula
    yields the standard convention ``n - 1`` for complete graphs, whose
    root subtrees are all single leaves.  A single vertex has
    connectivity 0.  Raises :class:`DisconnectedInput` when the root
    decoration is 0 (the cograph is then a disjoint union).
    """
    n = t.n
    if n == 1:
        return 0
    if t.decoration(t.root) != 1:
        raise DisconnectedInput("cograph is disconnected (root decoration 0)")
    return n - max(t.leaf_count(c) for c in t.children(t.root))


def degree_distribution(t: Cotree) -> EmpiricalDistribution:
    """Normalized degree law of the cograph: mass 1/n at deg(v)/n per leaf."""
    n = t.n
    return EmpiricalDistribution.from_samples(
        (d / n for d in degree_vector(t)), support=(0.0, 1.0)
    )


def empirical_induced_distribution(
    sampler: Callable[[random.Random], Cotree],
    k: int,
    trials: int,
    rng: Optional[random.Random] = None,
) -> EmpiricalDistribution:
    """Law of the induced cotree on ``k`` uniform marked leaves.

    Per trial: call ``sampler(rng)`` for a cotree, draw ``k`` distinct
    leaves uniformly (order matters), and bucket the induced cotree by
    its canonical encoding (decorations, sorted child encodings, leaf
    labels 1..k by mark position).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if rng is None:
        rng = make_rng()
    counts: Counter = Counter()
    for _ in range(trials):
        t = sampler(rng)
        n = t.n
        if k > n:
            raise ValueError(f"k = {k} exceeds sampled tree size {n}")
        leaves = t.leaves()
        marked = tuple(leaves[i] for i in rng.sample(range(n), k))
        counts[induced_cotree(t, marked).canonical_key()] += 1
    return EmpiricalDistribution.from_counts(counts)


def binary_induced_keys(k: int) -> frozenset:
    """Canonical keys of every labeled binary cotree on positions 1..k.

    These are the (2k-2)!/(k-1)! buckets that carry all the limiting mass
    of :func:`empirical_induced_distribution`, each with asymptotic
    probability (k-1)!/(2k-2)!.  The enumeration is factorial in ``k``,
    hence the small cap.
    """
    if not 1 <= k <= 6:
        raise ValueError("k must be between 1 and 6")
    from ._bruteforce import all_plane_binary_decorated

    return frozenset(t.canonical_key() for t in all_plane_binary_decorated(k))


def empirical_kappa_distribution(
    n: int,
    trials: int,
    rng: Optional[random.Random] = None,
    *,
    labeled: bool = True,
    method: str = "auto",
) -> EmpiricalDistribution:
    """Empirical law of the connectivity of uniform connected cographs.

    For a connected cograph, connectivity is ``n`` minus the largest
    root subtree; the root subtree sizes of a uniform cotree are
    independent of its decorations, so conditioning on connectedness
    (root decoration 1) does not change their law and each trial only
    samples the size composition.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if rng is None:
        rng = make_rng()
    draw = sample_labeled_root_child_sizes if labeled else sample_unlabeled_root_child_sizes
    counts: Counter = Counter()
    for _ in range(trials):
        counts[n - max(draw(n, rng, method=method))] += 1
    return EmpiricalDistribution.from_counts(counts)


# ---------------------------------------------------------------------------
# Subgraph densities


def _pattern_classes(k: int) -> list[bytes]:
    """Canonical class of every edge-pattern id on k ordered vertices.

    Pattern bit ``b`` (for the b-th pair (i, j), i < j, in lexicographic
    order) is set when the pair is adjacent.
    """
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    out = []
    for pat in range(1 << len(pairs)):
        edges = [pairs[b] for b in range(len(pairs)) if pat >> b & 1]
        out.append(canonical_form_small(Cograph(k, edges)))
    return out


_EXACT_TUPLE_BUDGET = 300_000_000


def _density_exact(g: Cograph, G: Cograph) -> float:
    k, n = g.n, G.n
    target = canonical_form_small(g)
    classes = _pattern_classes(k)
    if k == 1:
        return 1.0 if classes[0] == target else 0.0
    A = G.to_numpy().astype(np.int64)
    counts = np.zeros(len(classes), dtype=np.int64)
    if k == 2:
        m2 = 2 * G.edge_count
        counts[1] = m2
        counts[0] = n * n - m2
    elif k == 3:
        # pairs (0,1), (0,2), (1,2) -> bits 1, 2, 4
        A2 = A << 1
        A4 = A << 2
        for v1 in range(n):
            pat = A[v1][:, None] + A2[v1][None, :] + A4
            counts += np.bincount(pat.ravel(), minlength=8)
    else:
        # pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3) -> bits 1, 2, 4, 8, 16, 32;
        # for fixed (v1, v2), v3 varies along axis 0 and v4 along axis 1
        A32 = A << 5
        for v1 in range(n):
            col1 = (A[v1] << 1)[:, None]
            row1 = (A[v1] << 2)[None, :]
            base1 = A32 + col1 + row1
            for v2 in range(n):
                pat = base1 + ((A[v2] << 3)[:, None] + (A[v2] << 4)[None, :] + A[v1, v2])
                counts += np.bincount(pat.ravel(), minlength=64)
    return float(counts[_class_indices(classes, target)].sum()) / float(n) ** k


def _class_indices(classes: list[bytes], target: bytes) -> list[int]:
    return [i for i, c in enumerate(classes) if c == target]


def subgraph_density(
    g: Cograph,
    G: Cograph,
    mode: str = "exact",
    *,
    trials: Optional[int] = None,
    rng: Optional[random.Random] = None,
):
    """Probability that a k-tuple of i.i.d. uniform vertices induces ``g``.

    Tuples may repeat vertices; a repeated vertex is never adjacent to
    itself, so such tuples fall into classes with non-adjacent twins.
    Graphs are compared up to isomorphism via ``canonical_form_small``.

    ``mode="exact"`` scans all ``n**k`` tuples (requires ``k <= 4`` and
    ``n <= 2000``, and refuses scans beyond ``3e8`` tuples with
    :class:`~cographs.graph.SizeLimitError`); ``mode="monte-carlo"``
    samples ``trials`` tuples and returns ``(estimate, stderr)``.
    """
    k, n = g.n, G.n
    if mode == "exact":
        if k > 4 or n > 2000:
            raise SizeLimitError("exact mode requires k <= 4 and n <= 2000")
        if n**k > _EXACT_TUPLE_BUDGET:
            raise SizeLimitError(
                f"exact scan of n**k = {n**k} tuples exceeds the "
                f"{_EXACT_TUPLE_BUDGET} budget; use monte-carlo mode"
            )
        return _density_exact(g, G)
    if mode == "monte-carlo":
        if trials is None or trials < 1:
            raise ValueError("monte-carlo mode requires trials >= 1")
        if rng is None:
            rng = make_rng()
        target = canonical_form_small(g)
        hits = 0
        for _ in range(trials):
            tup = tuple(rng.randrange(n) for _ in range(k))
            if canonical_form_small(G.induced_subgraph(tup)) == target:
                hits += 1
        est = hits / trials
        return est, math.sqrt(est * (1.0 - est) / trials)
    raise ValueError('mode must be "exact" or "monte-carlo"')


# ---------------------------------------------------------------------------
# Metrics


def wasserstein1_vs_uniform(d: EmpiricalDistribution) -> float:
    """Exact W1 distance between a real-sample law on [0,1] and Uniform[0,1].

    Computed as the piecewise integral of ``|F_emp(x) - x|`` over the
    sorted samples.
    """
    if d.is_keyed:
        raise ValueError("wasserstein1_vs_uniform requires real-valued samples")
    xs = d.samples
    m = len(xs)
    if m == 0:
        raise EmptyDistribution("empty distribution")
    if xs[0] < 0.0 or xs[-1] > 1.0:
        raise ValueError("samples must lie in [0, 1]")
    pts = (0.0,) + xs + (1.0,)
    total = 0.0
    for i in range(m + 1):
        a, b = pts[i], pts[i + 1]
        if b <= a:
            continue
        c = i / m
        if c <= a:
            total += ((b - c) ** 2 - (a - c) ** 2) / 2.0
        elif c >= b:
            total += ((c - a) ** 2 - (c - b) ** 2) / 2.0
        else:
            total += ((c - a) ** 2 + (b - c) ** 2) / 2.0
    return total


def _as_prob_map(d) -> dict:
    if isinstance(d, EmpiricalDistribution):
        return d.probabilities()
    if isinstance(d, LimitLaw):
        return {j: p for j, p in d.items()}
    if isinstance(d, Mapping):
        return {k: float(v) for k, v in d.items()}
    raise TypeError("expected EmpiricalDistribution, LimitLaw or mapping")


def total_variation(
    a: Union[EmpiricalDistribution, LimitLaw, Mapping],
    b: Union[EmpiricalDistribution, LimitLaw, Mapping],
) -> float:
    """Total variation ½ Σ |p_a - p_b|; keys absent on one side count 0."""
    pa = _as_prob_map(a)
    pb = _as_prob_map(b)
    return 0.5 * sum(abs(pa.get(k, 0.0) - pb.get(k, 0.0)) for k in pa.keys() | pb.keys())


def chi_square_uniform(
    counts: Mapping, num_classes: int, significance: float = 1e-3
) -> tuple[float, float, bool]:
    """Goodness of fit of keyed counts against the uniform law.

    ``counts`` maps outcome -> count over an enumeration of
    ``num_classes`` possible outcomes (missing outcomes count 0).
    Returns ``(statistic, critical_value, passed)`` where ``passed``
    means the statistic stays below the upper ``significance`` quantile
    of chi-square with ``num_classes - 1`` degrees of freedom.
    """
    if len(counts) > num_classes:
        raise ValueError("more observed classes than num_classes")
    total = sum(counts.values())
    if total == 0:
        raise EmptyDistribution("no observations")
    expected = total / num_classes
    stat = sum((c - expected) ** 2 for c in counts.values()) / expected
    stat += (num_classes - len(counts)) * expected
    critical = float(_chi2.isf(significance, num_classes - 1))
    return stat, critical, stat < critical
