"""Exact truncated power series and the generating functions of cotrees.

:class:`TruncatedSeries` keeps coefficients as exact rationals (gmpy2's
``mpq`` when available, :class:`fractions.Fraction` otherwise) and never
lets a float contaminate a coefficient; floats appear only in the radius
finders and :class:`LimitLaw` outputs.

Series computed here (all exponential in the labeled world, ordinary with
Pólya substitutions in the unlabeled one):

* ``L`` — labeled cotree shapes (trees, internal arity >= 2), satisfying
  ``L = z + exp(L) - 1 - L``; counts 1, 1, 4, 26, 236, 2752, ...
* ``M = 2L - z = exp(L) - 1`` — labeled canonical cotrees / cographs.
* marked variants ``L'``, ``L^bullet = z L'``, ``L^even``, ``L^odd``
  (a marked "blossom" at even/odd depth), with closed forms
  ``L^even = 1/(e^L (2 - e^L))`` and ``L^odd = (e^L - 1) L^even``.
* ``M_t0`` — pairs (cotree, k-tuple of distinct leaves) whose induced
  cotree is a fixed labeled cotree ``t0``.
* ``U`` — unlabeled cotree shapes via the multiset fixed point
  ``2U - z + 1 = exp(sum_r U(z^r)/r)``; counts 1, 1, 2, 5, 12, 33, 90, ...
* ``V = 2U - z``, ``D = exp(sum_{r>=2} U(z^r)/r) - 1``, and the marked
  family ``U'``, ``U^bullet``, ``U*``, ``U^even``, ``U^odd`` built from
  ``W := 2U - z`` as ``U* = 1/(1-W)``, ``U^even = 1/(1-W^2)``,
  ``U^odd = W U^even``.
* ``V_t0`` — the unlabeled analogue of ``M_t0``.

Radius constants: the labeled series converge for ``|z| < rho`` with
``rho = 2 ln 2 - 1``; the unlabeled radius ``rho_u ~ 0.2808`` solves
``2U(z) - z = 1`` and is located by bisection on a truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from . import counts
from .cotree import Cotree, LEAF

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Q

__all__ = [
    "TruncatedSeries",
    "LimitLaw",
    "InsufficientOrder",
    "series_L",
    "series_M",
    "series_marked_labeled",
    "series_Mt0",
    "series_U",
    "series_V",
    "series_D",
    "series_U_marked",
    "series_Vt0",
    "rho_labeled",
    "rho_unlabeled",
    "pi_distribution",
    "pi_u_distribution",
    "egf_count",
    "marked_shape_params",
    "MarkedLabeled",
    "MarkedUnlabeled",
]


class InsufficientOrder(ValueError):
    """A truncated series was too short for the requested computation."""


def _q(*args) -> "_Q":
    return _Q(*args)


class TruncatedSeries:
    """A power series truncated at order ``N`` with exact rational coefficients.

    Coefficients are indexed ``0..N``; all arithmetic is exact and
    multiplication truncates at the smaller operand order.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [_q(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            if len(c) <= order:
                c.extend(_q(0) for _ in range(order + 1 - len(c)))
            else:
                del c[order + 1 :]
        elif not c:
            raise ValueError("need at least one coefficient or an order")
        self._c = tuple(c)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order=order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order=order)

    @classmethod
    def z(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order=order)

    # -- queries ---------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    def coeff(self, k: int):
        """Exact rational coefficient of ``z**k`` (0 beyond the truncation)."""
        if 0 <= k < len(self._c):
            return self._c[k]
        return _q(0)

    def coeffs(self) -> tuple:
        return self._c

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        head = ", ".join(str(x) for x in self._c[:5])
        return f"TruncatedSeries([{head}{', ...' if self.order > 4 else ''}], order={self.order})"

    # -- ring operations ---------------------------------------------------------

    def _pair_order(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = self._pair_order(other)
            return TruncatedSeries(
                [self._c[k] + other._c[k] for k in range(n + 1)]
            )
        return TruncatedSeries(
            [self._c[0] + _q(other)] + list(self._c[1:])
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-x for x in self._c])

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            n = self._pair_order(other)
            return TruncatedSeries(
                [self._c[k] - other._c[k] for k in range(n + 1)]
            )
        return TruncatedSeries(
            [self._c[0] - _q(other)] + list(self._c[1:])
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = self._pair_order(other)
            a, b = self._c, other._c
            out = [_q(0)] * (n + 1)
            for i in range(min(len(a) - 1, n) + 1):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(min(len(b) - 1, n - i) + 1):
                    bj = b[j]
                    if bj != 0:
                        out[i + j] += ai * bj
            return TruncatedSeries(out)
        q = _q(other)
        return TruncatedSeries([x * q for x in self._c])

    __rmul__ = __mul__

    def pow_int(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse().pow_int(-e)
        result = TruncatedSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def derivative(self) -> "TruncatedSeries":
        """d/dz, truncated at order N-1."""
        if self.order == 0:
            return TruncatedSeries.zero(0)
        return TruncatedSeries(
            [k * self._c[k] for k in range(1, len(self._c))]
        )

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``z**k`` keeping the order."""
        n = self.order
        return TruncatedSeries(
            [_q(0)] * k + list(self._c[: max(0, n + 1 - k)]), order=n
        )

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term (differential recurrence)."""
        if self._c[0] != 0:
            raise ValueError("exp requires zero constant term")
        n = self.order
        a = self._c
        out = [_q(0)] * (n + 1)
        out[0] = _q(1)
        for m in range(1, n + 1):
            acc = _q(0)
            for k in range(1, m + 1):
                ak = a[k] if k < len(a) else _q(0)
                if ak != 0:
                    acc += k * ak * out[m - k]
            out[m] = acc / m
        return TruncatedSeries(out)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        if self._c[0] == 0:
            raise ValueError("inverse requires nonzero constant term")
        n = self.order
        a = self._c
        out = [_q(0)] * (n + 1)
        out[0] = 1 / _q(a[0])
        for m in range(1, n + 1):
            acc = _q(0)
            for k in range(1, m + 1):
                if a[k] != 0:
                    acc += a[k] * out[m - k]
            out[m] = -acc * out[0]
        return TruncatedSeries(out)

    def compose_zr(self, r: int, order: int | None = None) -> "TruncatedSeries":
        """Substitute ``z -> z**r`` (coefficient spreading).

        The result order defaults to the input order; passing ``order``
        widens it (valid whenever ``order <= (self.order + 1) * r - 1``,
        since the first dropped coefficient sits at ``(self.order + 1) * r``).
        """
        if r < 1:
            raise ValueError("r must be >= 1")
        n = self.order if order is None else order
        if n > (self.order + 1) * r - 1:
            raise InsufficientOrder(
                f"compose_zr: order {n} needs input order > {self.order}"
            )
        out = [_q(0)] * (n + 1)
        for i, x in enumerate(self._c):
            if i * r > n:
                break
            out[i * r] = x
        return TruncatedSeries(out)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self._c, order=order)

    def evaluate_float(self, x: float) -> float:
        """Horner evaluation in float64 (diagnostic use only)."""
        acc = 0.0
        for c in reversed(self._c):
            acc = acc * x + float(c)
        return acc


# -- labeled series ---------------------------------------------------------------


def series_L(N: int) -> TruncatedSeries:
    """EGF of labeled cotree shapes: ``[z^n] = ell_n / n!``.

    Computed by the recurrence ``n l_n = sum_{k=1}^{n-1} k l_k f_{n-k}``
    with ``f = exp(L)`` coefficients satisfying ``f_n = 2 l_n`` for
    ``n >= 2`` (the defining fixed point ``L = z + exp(L) - 1 - L``).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    l = [_q(0)] * (N + 1)
    f = [_q(0)] * (N + 1)
    l[1] = _q(1)
    f[0] = _q(1)
    f[1] = _q(1)
    for n in range(2, N + 1):
        acc = _q(0)
        for k in range(1, n):
            if l[k] != 0 and f[n - k] != 0:
                acc += k * l[k] * f[n - k]
        l[n] = acc / n
        f[n] = 2 * l[n]
    return TruncatedSeries(l)


def series_M(N: int) -> TruncatedSeries:
    """EGF of labeled canonical cotrees: ``M = 2L - z`` (= ``exp(L) - 1``).

    Both formulas are computed and cross-checked on every call.
    """
    L = series_L(N)
    closed = 2 * L - TruncatedSeries.z(N)
    via_exp = L.exp() - 1
    if closed != via_exp:  # pragma: no cover - would flag a broken engine
        raise AssertionError("series_M: 2L - z != exp(L) - 1")
    return closed


class MarkedLabeled(NamedTuple):
    Lprime: TruncatedSeries
    Lbullet: TruncatedSeries
    Leven: TruncatedSeries
    Lodd: TruncatedSeries


def series_marked_labeled(N: int) -> MarkedLabeled:
    """Marked labeled series ``(L', L^bullet, L^even, L^odd)`` at order N.

    ``L'`` is the true derivative of the order-``N+1`` series; the even/odd
    blossom series use the closed forms ``L^even = 1/(e^L (2 - e^L))`` and
    ``L^odd = (e^L - 1) L^even``.  The identities ``L^even + L^odd = L'``
    and the two-equation system (``L^even = 1 + (e^L - 1) L^odd``,
    ``L^odd = (e^L - 1) L^even``) hold exactly on truncations.
    """
    L1 = series_L(N + 1)
    Lp = L1.derivative()  # order N
    E = L1.truncate(N).exp()
    Leven = (E * (2 - E)).inverse()
    Lodd = (E - 1) * Leven
    Lbullet = Lp.shift(1)
    return MarkedLabeled(Lp, Lbullet, Leven, Lodd)


def marked_shape_params(t0: Cotree) -> tuple[int, int, int, int]:
    """``(k, n_v, n_eq, n_neq)`` of a labeled cotree ``t0``.

    ``k`` = leaves, ``n_v`` = internal nodes, ``n_eq``/``n_neq`` = internal
    edges (both endpoints internal) whose decorations agree / differ.
    """
    k = t0.n
    n_v = 0
    n_eq = 0
    n_neq = 0
    for v in range(t0.size):
        d = t0.decoration(v)
        if d == LEAF:
            continue
        n_v += 1
        p = t0.parent(v)
        if p != -1:
            dp = t0.decoration(p)
            if dp == d:
                n_eq += 1
            else:
                n_neq += 1
    return k, n_v, n_eq, n_neq


def series_Mt0(t0: Cotree, N: int) -> TruncatedSeries:
    """EGF of (labeled canonical cotree, k-tuple of distinct leaves) pairs
    whose induced cotree is ``t0``:

    ``M_t0 = L' * (e^L)^{n_v} * (L^bullet)^k * (L^odd)^{n_eq} * (L^even)^{n_neq}``.
    """
    if not isinstance(t0, Cotree):
        raise ValueError("t0 must be a labeled cotree")
    if not t0.labeled:
        raise ValueError("t0 must be labeled")
    t0.validate()
    k, n_v, n_eq, n_neq = marked_shape_params(t0)
    if N < t0.n:
        raise InsufficientOrder(f"N={N} below size of t0 ({t0.n})")
    Lp, Lbullet, Leven, Lodd = series_marked_labeled(N)
    E = series_L(N).exp()
    out = Lp * E.pow_int(n_v) * Lbullet.pow_int(k)
    if n_eq:
        out = out * Lodd.pow_int(n_eq)
    if n_neq:
        out = out * Leven.pow_int(n_neq)
    return out


# -- unlabeled series ---------------------------------------------------------------


def series_U(N: int) -> TruncatedSeries:
    """OGF of unlabeled cotree shapes, via the Pólya fixed point.

    Solves ``2U - z + 1 = exp(U) * exp(B)`` with
    ``B = sum_{r>=2} U(z^r)/r`` order by order: the coefficient of ``z^n``
    in ``B`` only needs ``u_m`` for ``m <= n/2``, so the diagonal is
    well-founded once the ``r = 1`` term is split off.  Maintains the
    partial products ``P = exp(U)`` and ``Q = exp(B)`` through their
    differential recurrences.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    u = [_q(0)] * (N + 1)
    b = [_q(0)] * (N + 1)  # B coefficients
    p = [_q(0)] * (N + 1)  # exp(U)
    q = [_q(0)] * (N + 1)  # exp(B)
    p[0] = _q(1)
    q[0] = _q(1)
    for n in range(1, N + 1):
        # b_n = sum over r >= 2 dividing n of u_{n/r} / r
        acc_b = _q(0)
        for r in range(2, n + 1):
            if n % r == 0:
                m = n // r
                if u[m] != 0:
                    acc_b += _q(u[m]) / r
        b[n] = acc_b
        # q_n from Q' = B' Q
        acc_q = _q(0)
        for k in range(1, n + 1):
            if b[k] != 0:
                acc_q += k * b[k] * q[n - k]
        q[n] = acc_q / n
        # s_n = [z^n] exp(U_{<n}) (the part of p_n not involving u_n)
        acc_s = _q(0)
        for k in range(1, n):
            if u[k] != 0:
                acc_s += k * u[k] * p[n - k]
        s_n = acc_s / n
        # 2 u_n - [n == 1] = [z^n](P * Q) = (u_n + s_n) + sum_{k<n} p_k q_{n-k}
        acc_pq = _q(0)
        for k in range(0, n):
            if p[k] != 0 and q[n - k] != 0:
                acc_pq += p[k] * q[n - k]
        u_n = s_n + acc_pq + (1 if n == 1 else 0)
        u[n] = u_n
        p[n] = u_n + s_n
    return TruncatedSeries(u)


def series_V(N: int) -> TruncatedSeries:
    """OGF of unlabeled canonical cotrees: ``V = 2U - z``."""
    return 2 * series_U(N) - TruncatedSeries.z(N)


def series_D(N: int) -> TruncatedSeries:
    """``D = exp(sum_{r>=2} U(z^r)/r) - 1`` (repeated-subtree correction)."""
    U = series_U(N)
    B = TruncatedSeries.zero(N)
    for r in range(2, N + 1):
        B = B + U.compose_zr(r, order=N) * _q(1, r)
    return B.exp() - 1


class MarkedUnlabeled(NamedTuple):
    Uprime: TruncatedSeries
    Ubullet: TruncatedSeries
    Ustar: TruncatedSeries
    Ueven: TruncatedSeries
    Uodd: TruncatedSeries


def series_U_marked(N: int) -> MarkedUnlabeled:
    """Marked unlabeled series ``(U', U^bullet, U*, U^even, U^odd)``.

    With ``W = 2U - z``: ``U* = 1/(1 - W)``, ``U^even = 1/(1 - W^2)``,
    ``U^odd = W U^even``; ``U* = U^even + U^odd`` holds exactly.
    """
    U1 = series_U(N + 1)
    Up = U1.derivative()
    Ubullet = Up.shift(1)
    W = (2 * U1 - TruncatedSeries.z(N + 1)).truncate(N)
    one = TruncatedSeries.one(N)
    Ustar = (one - W).inverse()
    Ueven = (one - W * W).inverse()
    Uodd = W * Ueven
    return MarkedUnlabeled(Up, Ubullet, Ustar, Ueven, Uodd)


def series_Vt0(t0: Cotree, N: int) -> TruncatedSeries:
    """Unlabeled analogue of :func:`series_Mt0`:

    ``V_t0 = U* * (2U + 1 - z)^{n_v} * (U^bullet)^k * (U^odd)^{n_eq} * (U^even)^{n_neq}``.
    """
    if not isinstance(t0, Cotree):
        raise ValueError("t0 must be a labeled cotree")
    if not t0.labeled:
        raise ValueError("t0 must be labeled")
    t0.validate()
    k, n_v, n_eq, n_neq = marked_shape_params(t0)
    if N < t0.n:
        raise InsufficientOrder(f"N={N} below size of t0 ({t0.n})")
    Up, Ubullet, Ustar, Ueven, Uodd = series_U_marked(N)
    U = series_U(N)
    base = 2 * U + 1 - TruncatedSeries.z(N)
    out = Ustar * base.pow_int(n_v) * Ubullet.pow_int(k)
    if n_eq:
        out = out * Uodd.pow_int(n_eq)
    if n_neq:
        out = out * Ueven.pow_int(n_neq)
    return out


# -- radii and limit laws --------------------------------------------------------------


def rho_labeled() -> float:
    """Radius of convergence of the labeled series: ``2 ln 2 - 1``.

    Returns the correctly rounded double; evaluating ``2*log(2) - 1`` in
    floats lands one ulp low through cancellation.
    """
    return 0.38629436111989063


def _log_int(c: int) -> float:
    """Natural log of a positive integer, safe beyond float range."""
    bits = c.bit_length()
    if bits <= 900:
        return math.log(float(c))
    shift = bits - 64
    return math.log(float(c >> shift)) + shift * math.log(2.0)


def rho_unlabeled(N: int = 400, tol: float = 1e-10) -> float:
    """Singularity of the unlabeled series: the root of ``2U(z) - z = 1``.

    Bisection on the order-``N`` truncation over ``(0.2, 0.35)``; raises
    :class:`InsufficientOrder` when the truncation does not change sign
    there.  The result approaches the true radius ~0.2808 from above as
    ``N`` grows.
    """
    if N < 4:
        raise InsufficientOrder("need N >= 4 to bracket the root")
    u = counts.unlabeled_tree_counts(N)
    logs = [0.0] + [_log_int(u[n]) if u[n] else 0.0 for n in range(1, N + 1)]

    def h(z: float) -> float:
        total = -1.0 - z
        lz = math.log(z)
        zn = 1.0
        for n in range(1, N + 1):
            zn *= z
            if u[n].bit_length() <= 900:
                total += 2.0 * float(u[n]) * zn
            else:
                arg = logs[n] + n * lz
                if arg > 700.0:
                    return math.inf
                total += 2.0 * math.exp(arg)
        return total

    lo, hi = 0.2, 0.35
    if h(lo) >= 0.0:
        lo = 1e-6
    if h(lo) >= 0.0 or h(hi) <= 0.0:
        raise InsufficientOrder(
            f"2U(z)-z-1 does not change sign on ({lo}, {hi}) at order N={N}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if h(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class LimitLaw:
    """A discrete limit law ``j -> probabilities[j-1]`` with explicit tail mass."""

    rho: float
    probabilities: tuple[float, ...]
    tail: float

    def __post_init__(self):
        if any(p < 0 for p in self.probabilities):
            raise ValueError("negative probability in LimitLaw")
        if sum(self.probabilities) > 1.0 + 1e-12:
            raise ValueError("LimitLaw partial sums exceed 1")

    @property
    def jmax(self) -> int:
        return len(self.probabilities)

    def prob(self, j: int) -> float:
        if 1 <= j <= len(self.probabilities):
            return self.probabilities[j - 1]
        return 0.0

    def items(self):
        return [(j + 1, p) for j, p in enumerate(self.probabilities)]

    def total(self) -> float:
        return sum(self.probabilities)

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho,
            "probabilities": list(self.probabilities),
            "tail": self.tail,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "LimitLaw":
        return cls(
            rho=float(d["rho"]),
            probabilities=tuple(float(p) for p in d["probabilities"]),
            tail=float(d["tail"]),
        )


def pi_distribution(jmax: int) -> LimitLaw:
    """Labeled connectivity limit law: ``pi_j = rho**j * [z^j]M`` (EGF).

    ``[z^j]M = m_j / j!`` with ``m_1 = 1`` and ``m_j = 2*ell_j``; the first
    entries are ``pi_1 = rho``, ``pi_2 = rho**2``.
    """
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    rho = rho_labeled()
    lrho = math.log(rho)
    m = counts.cograph_counts_labeled(jmax)
    probs = []
    lfact = 0.0
    for j in range(1, jmax + 1):
        lfact += math.log(j)
        probs.append(math.exp(j * lrho + _log_int(m[j]) - lfact))
    total = sum(probs)
    return LimitLaw(rho=rho, probabilities=tuple(probs), tail=max(0.0, 1.0 - total))


def pi_u_distribution(jmax: int, N: int = 400, tol: float = 1e-10) -> LimitLaw:
    """Unlabeled connectivity limit law: ``pi^u_j = rho_u**j * [z^j]V``."""
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    rho_u = rho_unlabeled(N=N, tol=tol)
    lrho = math.log(rho_u)
    v = counts.cograph_counts_unlabeled(jmax)
    probs = []
    for j in range(1, jmax + 1):
        probs.append(math.exp(j * lrho + _log_int(v[j])))
    total = sum(probs)
    return LimitLaw(rho=rho_u, probabilities=tuple(probs), tail=max(0.0, 1.0 - total))


def egf_count(series: TruncatedSeries, n: int) -> int:
    """``n! * [z^n]`` of an exponential series, checked to be an integer."""
    c = series.coeff(n)
    val = c * math.factorial(n)
    num, den = val.numerator, val.denominator
    if den != 1:
        raise ValueError(f"n! * [z^{n}] is not an integer: {val}")
    return int(num)


def ogf_count(series: TruncatedSeries, n: int) -> int:
    """``[z^n]`` of an ordinary series, checked to be an integer."""
    c = series.coeff(n)
    if c.denominator != 1:
        raise ValueError(f"[z^{n}] is not an integer: {c}")
    return int(c.numerator)
