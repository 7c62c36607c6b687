"""Release-gate checks, runnable as a suite or one by one.

Each check is a function returning (passed, detail); the harness times it
and folds a per-check wall-clock budget into the verdict.  The fixed
default seed makes every verdict reproducible; detail strings carry the
measured numbers so a report is auditable without rerunning.

Budgets are generous on purpose: these are correctness gates, not
benchmarks, but a check that blows its budget is still a failure because
the suite is meant to stay runnable as a routine gate.
"""

from __future__ import annotations

import io
import math
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from . import _bruteforce as bf
from . import counts, formats, samplers, series, stats
from .cotree import (
    Cotree,
    cograph_of,
    degree_vector,
    induced_cotree,
    leaf_degree,
)

DEFAULT_SEED = 20260814

__all__ = ["DEFAULT_SEED", "CheckResult", "SUITES", "run_suite", "suite_names"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    elapsed: float
    budget: float
    detail: str

    @property
    def within_budget(self) -> bool:
        return self.elapsed <= self.budget

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.name}: {self.detail}"

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "budget_s": self.budget,
            "detail": self.detail,
        }


# ---------------------------------------------------------------------------
# 1. exact counts
# ---------------------------------------------------------------------------


def _check_exact_counts(seed: int) -> tuple[bool, str]:
    ell = counts.labeled_tree_counts(7)
    want = [0, 1, 1, 4, 26, 236, 2752]
    ok = list(ell[:7]) == want
    m = counts.cograph_counts_labeled(4)
    v = counts.cograph_counts_unlabeled(4)
    ok &= m[4] == 52 and v[4] == 10
    ok &= series.egf_count(series.series_M(4), 4) == 52
    ok &= series.ogf_count(series.series_V(4), 4) == 10
    u = counts.unlabeled_tree_counts(7)
    brute = [len(bf.all_connected_unlabeled_cographs(n)) for n in range(1, 8)]
    ok &= list(u[1:8]) == brute
    return bool(ok), (
        f"ell_1..6={list(ell[1:7])}, m_4={m[4]}, v_4={v[4]}, "
        f"u_1..7={list(u[1:8])} == brute force {brute}"
    )


# ---------------------------------------------------------------------------
# 2. series identities to order 200
# ---------------------------------------------------------------------------


def _check_series_identities(seed: int) -> tuple[bool, str]:
    N = 200
    L1 = series.series_L(N + 1)
    L = L1.truncate(N)
    E = L.exp()
    one = series.TruncatedSeries.one(N)
    z = series.TruncatedSeries.z(N)
    Lp, Lbullet, Leven, Lodd = series.series_marked_labeled(N)
    Lp = Lp.truncate(N)
    checks = {
        "L = z + exp(L) - 1 - L": (L - (z + E - 1 - L)).is_zero(),
        "L' (2 - exp(L)) = 1": (Lp * (2 - E) - one).is_zero(),
        "M = exp(L) - 1": ((2 * L - z) - (E - 1)).is_zero(),
        "closed L^even": (Leven.truncate(N) * (E * (2 - E)) - one).is_zero(),
        "closed L^odd": (
            Lodd.truncate(N) * (E * (2 - E)) - (E - 1)
        ).is_zero(),
        "system L^even": (
            Leven.truncate(N) - (1 + (E - 1) * Lodd.truncate(N))
        ).is_zero(),
        "system L^odd": (
            Lodd.truncate(N) - (E - 1) * Leven.truncate(N)
        ).is_zero(),
        "L^even + L^odd = L'": (
            Leven.truncate(N) + Lodd.truncate(N) - Lp
        ).is_zero(),
    }
    U = series.series_U(N)
    D = series.series_D(N)
    EU = U.exp()
    checks["U = z + exp>=2(U) + D exp(U)"] = (
        U - (z + (EU - 1 - U) + D * EU)
    ).is_zero()
    _, _, Ustar, Ueven, Uodd = series.series_U_marked(N)
    Ustar, Ueven, Uodd = (
        Ustar.truncate(N),
        Ueven.truncate(N),
        Uodd.truncate(N),
    )
    ge1 = EU - 1
    checks["U* = 1 + U* exp>=1(U) + U* D exp(U)"] = (
        Ustar - (1 + Ustar * ge1 + Ustar * D * EU)
    ).is_zero()
    checks["U^even system"] = (
        Ueven - (1 + Uodd * ge1 + Uodd * D * EU)
    ).is_zero()
    checks["U^odd system"] = (
        Uodd - (Ueven * ge1 + Ueven * D * EU)
    ).is_zero()
    checks["U* = U^even + U^odd"] = (Ustar - (Ueven + Uodd)).is_zero()
    bad = [name for name, ok in checks.items() if not ok]
    detail = (
        f"{len(checks)} identities hold coefficientwise to order {N}"
        if not bad
        else f"failed: {bad}"
    )
    return not bad, detail


# ---------------------------------------------------------------------------
# 3. marked-series oracles
# ---------------------------------------------------------------------------


def _check_marked_series_oracles(seed: int) -> tuple[bool, str]:
    cherries = [Cotree.from_nested((d, 1, 2)) for d in (0, 1)]
    keys = [t0.canonical_key() for t0 in cherries]
    M = [series.series_Mt0(t0, 6) for t0 in cherries]
    V = [series.series_Vt0(t0, 6) for t0 in cherries]
    ok = True
    rows = []
    for n in range(2, 7):
        lab = bf.count_marked_labeled(n, 2)
        unl = bf.count_marked_automorphism_triples(n, 2)
        ok &= set(lab) <= set(keys) and set(unl) <= set(keys)
        for i in range(2):
            em = series.egf_count(M[i], n)
            ev = series.egf_count(V[i], n)
            ok &= lab[keys[i]] == em and unl[keys[i]] == ev
        rows.append(f"n={n}: M {lab[keys[0]]}/{lab[keys[1]]} "
                    f"V {unl[keys[0]]}/{unl[keys[1]]}")
    return bool(ok), (
        "brute-force counts == n![z^n] for both size-2 cotrees, n <= 6 ("
        + "; ".join(rows)
        + ")"
    )


# ---------------------------------------------------------------------------
# 4. radii
# ---------------------------------------------------------------------------


def _check_radii(seed: int) -> tuple[bool, str]:
    rho = series.rho_labeled()
    expr = 2 * math.log(2) - 1
    ulp = math.ulp(expr)
    rho_u = series.rho_unlabeled(400)
    ok = abs(rho - expr) <= ulp and abs(rho_u - 0.2808) <= 1e-3
    return bool(ok), (
        f"rho_labeled={rho!r} == 2 ln 2 - 1 to within 1 ulp; "
        f"rho_unlabeled(400)={rho_u:.6f} "
        f"(|diff to 0.2808| = {abs(rho_u - 0.2808):.2e} <= 1e-3)"
    )


# ---------------------------------------------------------------------------
# 5. sampler uniformity at small sizes
# ---------------------------------------------------------------------------


def _plane_spec(t: Cotree):
    """Nested (dec, left, right)/label tuple preserving child order."""

    def rec(v: int):
        if t.is_leaf(v):
            return t.label(v)
        cs = t.children(v)
        return (t.decoration(v), *(rec(c) for c in cs))

    return rec(t.root)


def _drop_label(spec, label: int):
    """Remove one leaf from a binary nested spec, splicing out its parent."""
    if not isinstance(spec, tuple):
        return None if spec == label else spec
    d, a, b = spec
    ra, rb = _drop_label(a, label), _drop_label(b, label)
    if ra is None:
        return rb
    if rb is None:
        return ra
    return (d, ra, rb)


def _check_uniformity_small_n(seed: int) -> tuple[bool, str]:
    draws = 10**6
    sig = 1e-3
    rng_lab, rng_unl, rng_bin = samplers.spawn_rngs(seed, 3)
    parts = []
    ok = True

    labeled_keys = {t.canonical_key() for t in bf.all_labeled_cotrees(4)}
    c: Counter = Counter()
    for _ in range(draws):
        c[samplers.sample_labeled_cotree_uniform(4, rng_lab).canonical_key()] += 1
    ok &= set(c) <= labeled_keys
    stat, crit, passed = stats.chi_square_uniform(c, 52, sig)
    ok &= passed
    parts.append(f"labeled n=4: chi2={stat:.1f} < {crit:.1f} over 52")

    unlabeled_keys = {t.canonical_key() for t in bf.all_unlabeled_cotrees(4)}
    c = Counter()
    for _ in range(draws):
        c[
            samplers.sample_unlabeled_cotree_uniform(4, rng_unl).canonical_key()
        ] += 1
    ok &= set(c) <= unlabeled_keys
    stat, crit, passed = stats.chi_square_uniform(c, 10, sig)
    ok &= passed
    parts.append(f"unlabeled n=4: chi2={stat:.1f} < {crit:.1f} over 10")

    # binary sampler at k = 4: strict test over all 960 decorated plane
    # labeled trees, plus the 48-outcome marginal obtained by deleting the
    # last-inserted leaf (each k = 3 tree has exactly 20 preimages, so
    # uniformity must survive the decomposition).
    full: Counter = Counter()
    marginal: Counter = Counter()
    for _ in range(draws):
        t = samplers.sample_binary_decorated(4, 0.5, rng_bin)
        spec = _plane_spec(t)
        full[spec] += 1
        marginal[_drop_label(spec, 4)] += 1
    keys960 = {_plane_spec(t) for t in bf.all_plane_binary_decorated(4)}
    keys48 = {_plane_spec(t) for t in bf.all_plane_binary_decorated(3)}
    ok &= set(full) <= keys960 and set(marginal) <= keys48
    stat, crit, passed = stats.chi_square_uniform(full, 960, sig)
    ok &= passed
    parts.append(f"binary k=4: chi2={stat:.1f} < {crit:.1f} over 960")
    stat, crit, passed = stats.chi_square_uniform(marginal, 48, sig)
    ok &= passed
    parts.append(f"k=4 leaf-deletion marginal: chi2={stat:.1f} < {crit:.1f} over 48")

    return bool(ok), "; ".join(parts) + f" ({draws} draws each, sig {sig})"


# ---------------------------------------------------------------------------
# 6. binary degree law
# ---------------------------------------------------------------------------


def _check_binary_degree_law(seed: int) -> tuple[bool, str]:
    per_label = {1: Counter(), 2: Counter(), 3: Counter()}
    for t in bf.all_plane_binary_decorated(3):
        dv = degree_vector(t)
        for lab in (1, 2, 3):
            per_label[lab][dv[lab - 1]] += 1
    exact_ok = all(
        per_label[lab] == Counter({0: 16, 1: 16, 2: 16}) for lab in (1, 2, 3)
    )

    draws = 10**6
    rng = samplers.make_rng(seed)
    degs = samplers.binary_degree_samples(200, draws, 0.5, rng)
    c = Counter(degs)
    stat, crit, passed = stats.chi_square_uniform(c, 200, 1e-3)
    ok = exact_ok and passed
    return bool(ok), (
        f"k=3 exhaustive: every leaf exactly uniform on {{0,1,2}} "
        f"(16/16/16 over 48 trees): {exact_ok}; "
        f"n=200 empirical: chi2={stat:.1f} < {crit:.1f} ({draws} draws)"
    )


# ---------------------------------------------------------------------------
# 7. normalized degree vs Uniform[0,1]
# ---------------------------------------------------------------------------


def _check_degree_wasserstein(seed: int) -> tuple[bool, str]:
    n, reps, tol = 10**4, 10**3, 0.05
    rng_lab, rng_unl = samplers.spawn_rngs(seed, 2)
    parts = []
    ok = True
    for name, rng, fn in (
        ("labeled", rng_lab, samplers.sample_labeled_cotree_uniform),
        ("unlabeled", rng_unl, samplers.sample_unlabeled_cotree_uniform),
    ):
        vals = []
        for _ in range(reps):
            t = fn(n, rng)
            leaves = t.leaves()
            v = leaves[rng.randrange(n)]
            vals.append(leaf_degree(t, v) / n)
        d = stats.EmpiricalDistribution.from_samples(vals, support=(0.0, 1.0))
        w1 = stats.wasserstein1_vs_uniform(d)
        ok &= w1 <= tol
        parts.append(f"{name}: W1={w1:.4f}")
    return bool(ok), (
        f"n={n}, {reps} trees x 1 vertex: " + "; ".join(parts) + f" (tol {tol})"
    )


# ---------------------------------------------------------------------------
# 8. induced-cotree buckets at k = 3
# ---------------------------------------------------------------------------


def _check_induced_cotree_buckets(seed: int) -> tuple[bool, str]:
    n, k, trials, per_tree = 2000, 3, 10**5, 200
    binary_keys = stats.binary_induced_keys(k)
    rng_lab, rng_unl = samplers.spawn_rngs(seed, 2)
    parts = []
    ok = True
    for name, rng, fn in (
        ("labeled", rng_lab, samplers.sample_labeled_cotree_uniform),
        ("unlabeled", rng_unl, samplers.sample_unlabeled_cotree_uniform),
    ):
        c: Counter = Counter()
        done = 0
        while done < trials:
            t = fn(n, rng)
            leaves = t.leaves()
            batch = min(per_tree, trials - done)
            for _ in range(batch):
                tup = [leaves[i] for i in rng.sample(range(n), k)]
                c[induced_cotree(t, tup).canonical_key()] += 1
            done += batch
        freqs = {key: c[key] / trials for key in binary_keys}
        dev = max(abs(f - 1 / 12) for f in freqs.values())
        nonbinary = 1.0 - sum(freqs.values())
        ok &= dev <= 0.01 and nonbinary <= 0.05
        parts.append(
            f"{name}: max |bucket - 1/12| = {dev:.4f}, non-binary mass = "
            f"{nonbinary:.4f}"
        )
    return bool(ok), (
        f"n={n}, k={k}, {trials} tuples per class ({per_tree} per tree): "
        + "; ".join(parts)
    )


# ---------------------------------------------------------------------------
# 9. kappa limit law (Thm-level truncation makes this one honest-fail)
# ---------------------------------------------------------------------------


def _check_kappa_limit_law(seed: int) -> tuple[bool, str]:
    n, trials, jmax, tol = 2000, 10**5, 60, 0.02
    rng_lab, rng_unl = samplers.spawn_rngs(seed, 2)
    pi = series.pi_distribution(jmax)
    pi_u = series.pi_u_distribution(jmax)
    emp_lab = stats.empirical_kappa_distribution(
        n, trials, rng_lab, labeled=True
    )
    emp_unl = stats.empirical_kappa_distribution(
        n, trials, rng_unl, labeled=False
    )
    tv_lab = stats.total_variation(emp_lab, pi)
    tv_unl = stats.total_variation(emp_unl, pi_u)
    mass = pi.total()
    massu = pi_u.total()
    ok = tv_lab <= tol and tv_unl <= tol and mass > 0.99
    return bool(ok), (
        f"TV(labeled)={tv_lab:.4f}, TV(unlabeled)={tv_unl:.4f} (tol {tol}); "
        f"sum pi_j (j<=60) = {mass:.4f}, sum pi^u_j = {massu:.4f} "
        f"(required > 0.99; the laws have heavy j^(-3/2) tails, so the "
        f"truncated mass and the TV floor it forces sit near 0.09 and 0.045)"
    )


# ---------------------------------------------------------------------------
# 10. connectivity probability
# ---------------------------------------------------------------------------


def _check_connectivity_probability(seed: int) -> tuple[bool, str]:
    draws, n = 10**6, 2
    sigma = 0.5 / math.sqrt(draws)
    rng_lab, rng_unl = samplers.spawn_rngs(seed, 2)
    parts = []
    ok = True
    for name, rng, fn in (
        ("labeled", rng_lab, samplers.sample_labeled_cotree_uniform),
        ("unlabeled", rng_unl, samplers.sample_unlabeled_cotree_uniform),
    ):
        hits = 0
        for _ in range(draws):
            t = fn(n, rng)
            hits += t.decoration(t.root) == 1
        phat = hits / draws
        ok &= abs(phat - 0.5) <= 4 * sigma
        parts.append(f"{name}: {phat:.5f}")
    return bool(ok), (
        f"root decoration 1 frequency over {draws} draws at n={n}: "
        + "; ".join(parts)
        + f" (|p - 1/2| <= 4 sigma = {4 * sigma:.5f})"
    )


# ---------------------------------------------------------------------------
# 11. vertex connectivity vs minimum cut
# ---------------------------------------------------------------------------


def _check_connectivity_oracle(seed: int) -> tuple[bool, str]:
    checked = 0
    for n in range(1, 8):
        for t in bf.all_unlabeled_cotrees(n):
            if n > 1 and t.decoration(t.root) != 1:
                continue
            g = cograph_of(t)
            if stats.vertex_connectivity(t) != bf.min_vertex_cut(g):
                return False, f"mismatch on a connected cograph with n={n}"
            checked += 1
    return True, (
        f"vertex_connectivity == brute-force minimum vertex cut on all "
        f"{checked} connected cographs with n <= 7"
    )


# ---------------------------------------------------------------------------
# 12. adjacency-matrix figure
# ---------------------------------------------------------------------------


def _check_figure_render(seed: int) -> tuple[bool, str]:
    n_target = 4482
    rng = samplers.make_rng(seed)
    t = samplers.sample_boltzmann_labeled(n_target, rng)
    n = t.n
    buf = io.BytesIO()
    formats.render_adjacency_pgm(t, buf)
    matrix = formats.read_pgm(io.BytesIO(buf.getvalue()))
    sym = bool((matrix == matrix.T).all())
    diag_white = bool((matrix.diagonal() == 255).all())
    black = int((matrix == 0).sum())
    edges = 0
    for v in range(t.size):
        if t.decoration(v) == 1:
            lcs = [t.leaf_count(c) for c in t.children(v)]
            s = sum(lcs)
            edges += (s * s - sum(x * x for x in lcs)) // 2
    ok = (
        matrix.shape == (n, n)
        and abs(n - n_target) <= 0.1 * n_target
        and sym
        and diag_white
        and black == 2 * edges
    )
    return bool(ok), (
        f"seeded Boltzmann sample: n={n} (target {n_target} +/- 10%), "
        f"{len(buf.getvalue())} byte P5, symmetric={sym}, white diagonal="
        f"{diag_white}, black pixels = 2 x {edges} edges"
    )


# ---------------------------------------------------------------------------
# harness
# ---------------------------------------------------------------------------

SUITES: dict[str, tuple[Callable[[int], tuple[bool, str]], float]] = {
    "exact-counts": (_check_exact_counts, 1.0),
    "series-identities": (_check_series_identities, 10.0),
    "marked-series-oracles": (_check_marked_series_oracles, 120.0),
    "radii": (_check_radii, 30.0),
    "uniformity-small-n": (_check_uniformity_small_n, 300.0),
    "binary-degree-law": (_check_binary_degree_law, 300.0),
    "degree-wasserstein": (_check_degree_wasserstein, 600.0),
    "induced-cotree-buckets": (_check_induced_cotree_buckets, 600.0),
    "kappa-limit-law": (_check_kappa_limit_law, 900.0),
    "connectivity-probability": (_check_connectivity_probability, 60.0),
    "connectivity-oracle": (_check_connectivity_oracle, 120.0),
    "figure-render": (_check_figure_render, 60.0),
}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suite(
    names: list[str] | None = None,
    seed: int = DEFAULT_SEED,
    progress: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    """Run the named checks (all of them by default) and return results.

    A check passes only if its condition holds *and* it finished within its
    budget.  Unknown names raise KeyError; the CLI maps that to a usage
    error before getting here.
    """
    if names is None:
        names = suite_names()
    results = []
    for name in names:
        fn, budget = SUITES[name]
        start = time.perf_counter()
        try:
            cond, detail = fn(seed)
        except Exception as exc:  # a crashing check is a failing check
            cond, detail = False, f"raised {type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        if cond and elapsed > budget:
            cond = False
            detail += f" [exceeded budget: {elapsed:.1f}s > {budget:.0f}s]"
        res = CheckResult(
            name=name,
            passed=cond,
            elapsed=elapsed,
            budget=budget,
            detail=detail,
        )
        if progress is not None:
            progress(res)
        results.append(res)
    return results
