"""Count tables for cotree sampling and the ``count`` CLI table.

Two ladders of tables live here, both growable and cached as module
singletons:

* exact big-integer tables — labeled tree counts ``ell[n]`` (1, 1, 4, 26,
  236, 2752, ...) with forest counts ``E[n]``, and unlabeled tree counts
  ``u[n]`` (1, 1, 2, 5, 12, 33, ...) with multiset counts ``w[n]`` and the
  divisor sums ``s[n]``.  These drive the exact inverse-transform samplers
  at small sizes and the coefficient tables of the CLI.

* scaled float64 tables — the same quantities multiplied by ``r**n / n!``
  (labeled) or ``q**n`` (unlabeled) for fixed scale constants near the
  series' convergence radii, so entries stay within float range at any
  practical size.  Inverse-transform decisions taken against these tables
  are *certified*: every comparison is resolved only when a rigorous
  relative-error enclosure separates the operands (see
  :mod:`cographs.samplers`), with a long-double ladder as the second rung.

Recurrences (verified in the test suite against brute-force enumeration):

* labeled: ``n*l_n = sum_{k=1}^{n-1} k*l_k*f_{n-k}`` for the exponential
  coefficients ``l_n = ell_n/n!``, ``f_n = E_n/n!``, with ``E_n = 2*ell_n``
  for ``n >= 2``, ``E_1 = 1``, ``E_0 = 1`` (forests are sets of trees and a
  set of trees is a tree minus the single-tree case, doubled by the root
  alternative).
* unlabeled: with ``s_k = sum_{d | k} d*u_d`` the multiset counts satisfy
  ``n*w_n = sum_{k=1}^{n} s_k*w_{n-k}`` (Euler transform), and ``u_n =
  w_n/2`` for ``n >= 2``.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "RHAT",
    "QHAT",
    "labeled_tree_counts",
    "labeled_forest_counts",
    "unlabeled_tree_counts",
    "unlabeled_multiset_counts",
    "cograph_counts_labeled",
    "cograph_counts_unlabeled",
    "labeled_exact",
    "unlabeled_exact",
    "labeled_scaled",
    "unlabeled_scaled",
    "divisors_desc",
]

#: float64 scale for the labeled tables: within one ulp of 2*ln(2) - 1,
#: the convergence radius of the labeled tree series (keeps T[n] ~ n**-1.5).
RHAT = 0.3862943611198906

#: float64 scale for the unlabeled tables, near the unlabeled radius 0.2808...
QHAT = 0.2808

_ULP = 2.0 ** -53
_ULP_LD = float(np.finfo(np.longdouble).eps)


class LabeledExact:
    """Big-integer labeled counts: trees ``ell[n]`` and forests ``E[n]``."""

    def __init__(self) -> None:
        self.ell: list[int] = [0, 1]
        self.E: list[int] = [1, 1]

    def ensure(self, n: int) -> None:
        ell, E = self.ell, self.E
        while len(ell) <= n:
            s = len(ell)
            # s*ell_s = sum_{k=1}^{s-1} k*C(s,k)*ell_k*E_{s-k}
            total = 0
            binom = s  # C(s, 1)
            for k in range(1, s):
                total += k * binom * ell[k] * E[s - k]
                binom = binom * (s - k) // (k + 1)
            val = total // s
            assert val * s == total
            ell.append(val)
            E.append(2 * val)


class UnlabeledExact:
    """Big-integer unlabeled counts: trees ``u``, multisets ``w``, sums ``s``."""

    def __init__(self) -> None:
        self.u: list[int] = [0, 1]
        self.w: list[int] = [1, 1]
        self.s: list[int] = [0, 1]

    def ensure(self, n: int) -> None:
        u, w, s = self.u, self.w, self.s
        while len(u) <= n:
            m = len(u)
            sigma = sum(d * u[d] for d in _proper_divisors(m))
            dot = sum(s[k] * w[m - k] for k in range(1, m))
            num = 2 * (dot + sigma)
            wm = num // m
            assert wm * m == num
            um = wm // 2
            assert um * 2 == wm
            u.append(um)
            w.append(wm)
            s.append(sigma + m * um)


def _proper_divisors(m: int) -> list[int]:
    out = []
    i = 1
    while i * i <= m:
        if m % i == 0:
            if i != m:
                out.append(i)
            j = m // i
            if j != i and j != m:
                out.append(j)
        i += 1
    return out


_div_cache: dict[int, tuple[int, ...]] = {}


def divisors_desc(k: int) -> tuple[int, ...]:
    """All divisors of ``k`` in decreasing order (cached)."""
    hit = _div_cache.get(k)
    if hit is not None:
        return hit
    small = []
    large = []
    i = 1
    while i * i <= k:
        if k % i == 0:
            small.append(i)
            if i != k // i:
                large.append(k // i)
        i += 1
    out = tuple(sorted(small + large, reverse=True))
    if len(_div_cache) < 1_000_000:
        _div_cache[k] = out
    return out


class LabeledScaled:
    """Scaled float64 labeled tables ``T[n] ~ ell_n * RHAT**n / n!``.

    ``A[n] = n*T[n]`` and ``F[n] = E_n * RHAT**n / n!`` are kept alongside;
    the defining recurrence is ``s*T[s] = sum_{r=1}^{s-1} (s-r)*T[s-r]*F[r]``.
    ``band`` is a certified bound on the relative error of every entry
    (positive-term recurrences only; pairwise numpy summation).
    """

    def __init__(self, dtype=np.float64, ulp: float = _ULP) -> None:
        self.dtype = dtype
        self.ulp = ulp
        self.T = np.array([0.0, RHAT], dtype=dtype)
        self.F = np.array([1.0, RHAT], dtype=dtype)
        self.A = np.array([0.0, RHAT], dtype=dtype)
        self.band = 64.0 * ulp

    def ensure(self, n: int) -> None:
        if len(self.T) > n:
            return
        new_len = max(n + 1, 2 * len(self.T))
        T = np.zeros(new_len, dtype=self.dtype)
        F = np.zeros(new_len, dtype=self.dtype)
        A = np.zeros(new_len, dtype=self.dtype)
        old = len(self.T)
        T[:old], F[:old], A[:old] = self.T, self.F, self.A
        for s in range(old, new_len):
            tot = np.dot(A[1:s][::-1], F[1:s])
            ts = tot / s
            T[s] = ts
            F[s] = 2.0 * ts
            A[s] = s * ts
        self.T, self.F, self.A = T, F, A
        # error induction: eps_s <= max_r (eps_{s-r} + eps_r) + (log2 s + 3) u
        # => eps_N <= (N + 8) * (log2 N + 8) * u; keep a 32x safety margin.
        self.band = 32.0 * (new_len + 8) * (math.log2(new_len) + 8) * self.ulp


class UnlabeledScaled:
    """Scaled float64 unlabeled tables ``Tu[n] = u_n * QHAT**n`` etc.

    ``Wu[n] = w_n * QHAT**n``, ``Su[k] = s_k * QHAT**k``, plus the power
    table ``qpow[i] = QHAT**i`` used to scale divisor cells.
    """

    def __init__(self, dtype=np.float64, ulp: float = _ULP) -> None:
        self.dtype = dtype
        self.ulp = ulp
        q = dtype(QHAT)
        self.Tu = np.array([0.0, q], dtype=dtype)
        self.Wu = np.array([1.0, q], dtype=dtype)
        self.Su = np.array([0.0, q], dtype=dtype)
        self.qpow = np.array([1.0, q], dtype=dtype)
        self.band = 64.0 * ulp

    def ensure(self, n: int) -> None:
        if len(self.Tu) > n:
            return
        new_len = max(n + 1, 2 * len(self.Tu))
        Tu = np.zeros(new_len, dtype=self.dtype)
        Wu = np.zeros(new_len, dtype=self.dtype)
        Su = np.zeros(new_len, dtype=self.dtype)
        qpow = np.zeros(new_len, dtype=self.dtype)
        old = len(self.Tu)
        Tu[:old], Wu[:old], Su[:old] = self.Tu, self.Wu, self.Su
        qpow[:old] = self.qpow
        q = self.dtype(QHAT)
        for i in range(old, new_len):
            qpow[i] = qpow[i - 1] * q
        for m in range(old, new_len):
            sigma = self.dtype(0.0)
            for d in divisors_desc(m)[1:]:  # proper divisors
                sigma += d * Tu[d] * qpow[m - d]
            dot = np.dot(Su[1:m][::-1], Wu[1:m])
            wm = 2.0 * (dot + sigma) / m
            Wu[m] = wm
            Tu[m] = wm / 2.0
            Su[m] = sigma + m * Tu[m]
        self.Tu, self.Wu, self.Su, self.qpow = Tu, Wu, Su, qpow
        self.band = 32.0 * (new_len + 8) * (math.log2(new_len) + 8) * self.ulp


# -- module singletons ----------------------------------------------------------

_labeled_exact = LabeledExact()
_unlabeled_exact = UnlabeledExact()
_labeled_scaled = LabeledScaled()
_unlabeled_scaled = UnlabeledScaled()
_labeled_scaled_ld: LabeledScaled | None = None
_unlabeled_scaled_ld: UnlabeledScaled | None = None


def labeled_exact(n: int) -> LabeledExact:
    _labeled_exact.ensure(n)
    return _labeled_exact


def unlabeled_exact(n: int) -> UnlabeledExact:
    _unlabeled_exact.ensure(n)
    return _unlabeled_exact


def labeled_scaled(n: int) -> LabeledScaled:
    _labeled_scaled.ensure(n)
    return _labeled_scaled


def unlabeled_scaled(n: int) -> UnlabeledScaled:
    _unlabeled_scaled.ensure(n)
    return _unlabeled_scaled


def labeled_scaled_longdouble(n: int) -> LabeledScaled:
    global _labeled_scaled_ld
    if _labeled_scaled_ld is None:
        _labeled_scaled_ld = LabeledScaled(dtype=np.longdouble, ulp=_ULP_LD)
    _labeled_scaled_ld.ensure(n)
    return _labeled_scaled_ld


def unlabeled_scaled_longdouble(n: int) -> UnlabeledScaled:
    global _unlabeled_scaled_ld
    if _unlabeled_scaled_ld is None:
        _unlabeled_scaled_ld = UnlabeledScaled(dtype=np.longdouble, ulp=_ULP_LD)
    _unlabeled_scaled_ld.ensure(n)
    return _unlabeled_scaled_ld


# -- public count tables ----------------------------------------------------------


def labeled_tree_counts(max_n: int) -> list[int]:
    """``[ell_0..ell_max_n]`` with ``ell_0 = 0``: labeled cotree-shape trees."""
    t = labeled_exact(max_n)
    return t.ell[: max_n + 1]


def labeled_forest_counts(max_n: int) -> list[int]:
    t = labeled_exact(max_n)
    return t.E[: max_n + 1]


def unlabeled_tree_counts(max_n: int) -> list[int]:
    t = unlabeled_exact(max_n)
    return t.u[: max_n + 1]


def unlabeled_multiset_counts(max_n: int) -> list[int]:
    t = unlabeled_exact(max_n)
    return t.w[: max_n + 1]


def cograph_counts_labeled(max_n: int) -> list[int]:
    """``m_n``: labeled canonical cotrees (= labeled cographs) on n vertices.

    ``m_n = 2*ell_n`` for ``n >= 2`` (root decorated 0 or 1), ``m_1 = 1``.
    """
    ell = labeled_tree_counts(max_n)
    return [0] + [ell[n] if n == 1 else 2 * ell[n] for n in range(1, max_n + 1)]


def cograph_counts_unlabeled(max_n: int) -> list[int]:
    """``v_n``: unlabeled canonical cotrees on n leaves (``v_1 = 1``)."""
    u = unlabeled_tree_counts(max_n)
    return [0] + [u[n] if n == 1 else 2 * u[n] for n in range(1, max_n + 1)]


def scaled_relative_band(n: int) -> float:
    """Certified relative-error band of the float64 scaled tables at size n."""
    return labeled_scaled(n).band
