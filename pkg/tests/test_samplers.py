"""Random generation: determinism, exact laws, and backend agreement."""

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from scipy.stats import chi2

from cographs import counts
from cographs._bruteforce import all_labeled_cotrees
from cographs.cotree import CanonicalCotree, Cotree, leaf_degree
from cographs.samplers import (
    EXACT_SIZE_CUTOFF,
    IterationCapExceeded,
    PrecisionExhausted,
    SampleConfig,
    _certified_choice,
    binary_degree_samples,
    flip_involution,
    make_rng,
    rank_order,
    sample,
    sample_binary_decorated,
    sample_boltzmann_labeled,
    sample_labeled_cotree_uniform,
    sample_labeled_root_child_sizes,
    sample_unlabeled_cotree_uniform,
    sample_unlabeled_root_child_sizes,
    spawn_rngs,
)

SIG = 1e-3  # significance of every statistical assertion in this module


def _chi2_stat(observed: Counter, probs: dict, total: int) -> tuple[float, float]:
    stat = 0.0
    for key, p in probs.items():
        exp = total * p
        stat += (observed.get(key, 0) - exp) ** 2 / exp
    return stat, float(chi2.isf(SIG, len(probs) - 1))


# -- RNG plumbing ---------------------------------------------------------------


def test_make_rng_deterministic():
    a = make_rng(7)
    b = make_rng(7)
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]
    assert make_rng(8).random() != make_rng(7).random()
    assert 0.0 <= make_rng(None).random() < 1.0


def test_spawn_rngs_independent_streams():
    xs = [r.random() for r in spawn_rngs(7, 3)]
    ys = [r.random() for r in spawn_rngs(7, 3)]
    assert xs == ys
    assert len(set(xs)) == 3
    assert xs[0] != make_rng(7).random()


def test_sample_config_validation():
    good = SampleConfig(n=5, seed=1, kind="labeled-exact")
    assert good.window == 0.1 and good.p == 0.5
    with pytest.raises(ValueError):
        SampleConfig(n=0)
    with pytest.raises(ValueError):
        SampleConfig(n=1, seed=-1)
    with pytest.raises(ValueError):
        SampleConfig(n=1, seed=1 << 64)
    with pytest.raises(ValueError):
        SampleConfig(n=1, kind="nope")
    with pytest.raises(ValueError):
        SampleConfig(n=1, window=1.0)
    with pytest.raises(ValueError):
        SampleConfig(n=1, p=1.5)


def test_sample_dispatch_deterministic():
    for kind, n in [
        ("labeled-exact", 12),
        ("unlabeled-exact", 12),
        ("labeled-boltzmann", 30),
        ("binary-decorated", 9),
    ]:
        cfg = SampleConfig(n=n, seed=99, kind=kind)
        t1 = sample(cfg)
        t2 = sample(cfg)
        assert t1 == t2
        assert t1 != sample(SampleConfig(n=n, seed=100, kind=kind))
    assert sample(SampleConfig(n=12, seed=99)).labeled
    assert not sample(SampleConfig(n=12, seed=99, kind="unlabeled-exact")).labeled


# -- uniform samplers: shape invariants ----------------------------------------


def test_labeled_uniform_basic_invariants():
    rng = make_rng(3)
    for n in (1, 2, 3, 8, 40):
        t = sample_labeled_cotree_uniform(n, rng)
        assert isinstance(t, CanonicalCotree) and t.is_canonical
        assert t.n == n and t.labeled
        assert sorted(t.label(v) for v in t.leaves()) == list(range(1, n + 1))
    for _ in range(20):
        t = sample_labeled_cotree_uniform(9, rng, connected=True)
        assert t.decoration(t.root) == 1
    with pytest.raises(ValueError):
        sample_labeled_cotree_uniform(0, rng)
    with pytest.raises(ValueError):
        sample_labeled_cotree_uniform(5, rng, method="bogus")


def test_unlabeled_uniform_basic_invariants():
    rng = make_rng(4)
    for n in (1, 2, 3, 8, 40):
        t = sample_unlabeled_cotree_uniform(n, rng)
        assert isinstance(t, CanonicalCotree) and t.is_canonical
        assert t.n == n and not t.labeled
    for _ in range(20):
        t = sample_unlabeled_cotree_uniform(9, rng, connected=True)
        assert t.decoration(t.root) == 1


def test_root_child_sizes_invariants():
    rng = make_rng(5)
    for n in (2, 3, 17):
        for draw in (sample_labeled_root_child_sizes, sample_unlabeled_root_child_sizes):
            sizes = draw(n, rng)
            assert sum(sizes) == n and len(sizes) >= 2
            assert all(s >= 1 for s in sizes)
    assert sample_labeled_root_child_sizes(2, rng) == [1, 1]
    with pytest.raises(ValueError):
        sample_unlabeled_root_child_sizes(1, rng)


# -- uniform samplers: exact laws ------------------------------------------------


def test_labeled_uniform_chi_square_n3():
    keys = {t.canonical_key() for t in all_labeled_cotrees(3)}
    assert len(keys) == 8
    rng = make_rng(11)
    obs = Counter(
        sample_labeled_cotree_uniform(3, rng).canonical_key() for _ in range(4000)
    )
    assert set(obs) <= keys
    stat, crit = _chi2_stat(obs, {k: 1 / 8 for k in keys}, 4000)
    assert stat < crit


def test_unlabeled_uniform_chi_square_n4():
    rng = make_rng(12)
    obs = Counter(
        sample_unlabeled_cotree_uniform(4, rng).canonical_key() for _ in range(4000)
    )
    assert len(obs) == 10  # v_4
    stat, crit = _chi2_stat(obs, {k: 1 / 10 for k in obs}, 4000)
    assert stat < crit


def test_labeled_root_sizes_match_enumeration_n6():
    # exact composition law read off the exhaustive n = 6 enumeration
    law = Counter()
    trees = all_labeled_cotrees(6)
    for t in trees:
        law[
            tuple(sorted((t.leaf_count(c) for c in t.children(t.root)), reverse=True))
        ] += 1
    probs = {k: v / len(trees) for k, v in law.items()}
    assert len(probs) == 10  # partitions of 6 into >= 2 parts
    rng = make_rng(13)
    total = 3000
    obs = Counter(
        tuple(sorted(sample_labeled_root_child_sizes(6, rng), reverse=True))
        for _ in range(total)
    )
    assert set(obs) <= set(probs)
    # lump rare compositions so every cell expects >= 15 observations
    main = {k: p for k, p in probs.items() if total * p >= 15}
    rest = 1.0 - sum(main.values())
    obs_l = Counter({k: obs.get(k, 0) for k in main})
    obs_l["rest"] = total - sum(obs_l.values())
    stat, crit = _chi2_stat(obs_l, {**main, "rest": rest}, total)
    assert stat < crit


def test_unlabeled_root_sizes_match_multiset_law_n8():
    # P(sorted sizes = lambda) = prod_d C(u_d + m_d - 1, m_d) / u_8 where
    # m_d is the multiplicity of part d: multisets of smaller trees
    u = counts.unlabeled_tree_counts(8)
    law: dict[tuple, Fraction] = {}
    for parts in _partitions_ge2(8):
        ways = 1
        for d in set(parts):
            m = parts.count(d)
            ways *= math.comb(u[d] + m - 1, m)
        law[parts] = Fraction(ways, u[8])
    assert sum(law.values()) == 1
    rng = make_rng(14)
    total = 3000
    obs = Counter(
        tuple(sorted(sample_unlabeled_root_child_sizes(8, rng), reverse=True))
        for _ in range(total)
    )
    assert set(obs) <= set(law)
    main = {k: float(p) for k, p in law.items() if total * p >= 15}
    obs_l = Counter({k: obs.get(k, 0) for k in main})
    obs_l["rest"] = total - sum(obs_l.values())
    stat, crit = _chi2_stat(obs_l, {**main, "rest": 1.0 - sum(main.values())}, total)
    assert stat < crit


def _partitions_ge2(n: int) -> list[tuple]:
    out = []
    for k in range(2, n + 1):
        for parts in combinations_with_replacement(range(1, n), k):
            if sum(parts) == n:
                out.append(tuple(sorted(parts, reverse=True)))
    return out


# -- certified float backend -------------------------------------------------------


def test_float_backend_first_split_law_labeled():
    # above the exact cutoff the top split runs on certified float tables;
    # its marginal P(r) = C(n-1, r) ell_{n-r} E_r / ell_n is known exactly
    n = EXACT_SIZE_CUTOFF + 10
    tab = counts.labeled_exact(n)
    probs_r = {
        r: Fraction(math.comb(n - 1, r) * tab.ell[n - r] * tab.E[r], tab.ell[n])
        for r in range(1, n)
    }
    assert sum(probs_r.values()) == 1
    rng = make_rng(15)
    total = 4000
    obs_r = Counter(
        n - sample_labeled_root_child_sizes(n, rng, method="float")[0]
        for _ in range(total)
    )
    cells = {r: float(probs_r[r]) for r in (1, 2, 3)}
    obs_l = Counter({r: obs_r.get(r, 0) for r in cells})
    obs_l["rest"] = total - sum(obs_l.values())
    stat, crit = _chi2_stat(obs_l, {**cells, "rest": 1.0 - sum(cells.values())}, total)
    assert stat < crit


def test_float_backend_composition_law_unlabeled():
    n = EXACT_SIZE_CUTOFF + 10
    tabu = counts.unlabeled_exact(n)
    u = tabu.u
    rng = make_rng(16)
    total = 4000
    obs = Counter(
        tuple(sorted(sample_unlabeled_root_child_sizes(n, rng, method="float"), reverse=True))
        for _ in range(total)
    )
    # the three most likely compositions, with exact multiset probabilities
    cells = {
        (n - 1, 1): Fraction(u[n - 1], u[n]),
        (n - 2, 2): Fraction(u[n - 2] * u[2], u[n]),
        (n - 2, 1, 1): Fraction(u[n - 2], u[n]),
    }
    floats = {k: float(p) for k, p in cells.items()}
    obs_l = Counter({k: obs.get(k, 0) for k in floats})
    obs_l["rest"] = total - sum(obs_l.values())
    stat, crit = _chi2_stat(
        obs_l, {**floats, "rest": 1.0 - sum(floats.values())}, total
    )
    assert stat < crit


def test_certified_choice_exhaustion_guard():
    # a factory whose error band swallows the whole decision range must
    # surface PrecisionExhausted rather than return an uncertain key
    def fat_band_factory():
        def gen():
            yield "a", 0.5
            yield "b", 0.5

        return 1.0, gen(), 1.0, 1.0, 1 << 128

    with pytest.raises(PrecisionExhausted):
        _certified_choice(make_rng(0), (fat_band_factory,), "test choice")


# -- Boltzmann sampler ---------------------------------------------------------------


def test_boltzmann_window_and_validation():
    rng = make_rng(17)
    for _ in range(30):
        t = sample_boltzmann_labeled(60, rng, window=0.1)
        assert isinstance(t, CanonicalCotree)
        assert 54 <= t.n <= 66
        assert sorted(t.label(v) for v in t.leaves()) == list(range(1, t.n + 1))
    t = sample_boltzmann_labeled(8, rng, x=0.25, window=0.25)
    assert 6 <= t.n <= 10
    with pytest.raises(ValueError):
        sample_boltzmann_labeled(10, rng, x=0.5)  # beyond the radius
    with pytest.raises(ValueError):
        sample_boltzmann_labeled(10, rng, window=0.0)
    with pytest.raises(IterationCapExceeded):
        sample_boltzmann_labeled(100000, rng, window=1e-9, max_attempts=3)


# -- binary decorated trees -------------------------------------------------------------


def test_binary_decorated_shape_and_decorations():
    rng = make_rng(18)
    t = sample_binary_decorated(1, 0.5, rng)
    assert t.n == 1 and str(t) == "1"
    for _ in range(20):
        t = sample_binary_decorated(7, 0.5, rng)
        assert t.n == 7 and t.labeled
        assert all(
            len(t.children(v)) == 2 for v in range(t.size) if not t.is_leaf(v)
        )
    all0 = sample_binary_decorated(6, 1.0, rng)
    assert {all0.decoration(v) for v in range(all0.size) if not all0.is_leaf(v)} == {0}
    all1 = sample_binary_decorated(6, 0.0, rng)
    assert {all1.decoration(v) for v in range(all1.size) if not all1.is_leaf(v)} == {1}
    with pytest.raises(ValueError):
        sample_binary_decorated(0, 0.5, rng)
    with pytest.raises(ValueError):
        sample_binary_decorated(3, 1.5, rng)


def test_binary_decorated_support_k3():
    # all (2k-2)!/(k-1)! = 48 plane decorated trees appear at p = 1/2
    rng = make_rng(19)
    seen = {sample_binary_decorated(3, 0.5, rng).plane_key() for _ in range(3000)}
    assert len(seen) == 48


def test_flip_involution_is_an_involution():
    rng = make_rng(20)
    for _ in range(25):
        t = sample_binary_decorated(8, 0.3, rng)
        for lbl in (1, 4, 8):
            f = flip_involution(t, lbl)
            # same shape and labels, decorations possibly toggled
            assert [f.label(v) for v in f.leaves()] == [
                t.label(v) for v in t.leaves()
            ]
            assert flip_involution(f, lbl) == t
    with pytest.raises(ValueError):
        flip_involution(Cotree.from_nested((1, 1, 2, 3)), 1)  # not binary


def test_rank_order_degree_identity():
    # position of a leaf in rank_order(t), minus one, equals its cograph
    # degree after flipping its right-ancestors
    rng = make_rng(21)
    for _ in range(40):
        t = sample_binary_decorated(7, 0.5, rng)
        order = rank_order(t)
        assert sorted(order) == list(range(1, 8))
        for lbl in range(1, 8):
            f = flip_involution(t, lbl)
            assert order.index(lbl) == leaf_degree(f, f.leaf_of_label(lbl))
    plain = Cotree.from_nested((0, (0, 1, 2), (0, 3, 4)))
    assert rank_order(plain) == [1, 2, 3, 4]
    mirrored = Cotree.from_nested((1, (1, 1, 2), (1, 3, 4)))
    assert rank_order(mirrored) == [4, 3, 2, 1]


def test_binary_degree_samples_matches_tree_path():
    # the array fast path consumes the RNG exactly like building the tree
    # and then picking a uniform leaf
    k, reps, p = 6, 25, 0.3
    rng_fast = make_rng(22)
    rng_slow = make_rng(22)
    degs = binary_degree_samples(k, reps, p, rng_fast)
    for i in range(reps):
        t = sample_binary_decorated(k, p, rng_slow)
        lbl = rng_slow.randrange(k) + 1
        assert degs[i] == leaf_degree(t, t.leaf_of_label(lbl))
    assert binary_degree_samples(1, 4, 0.5, make_rng(0)) == [0, 0, 0, 0]
