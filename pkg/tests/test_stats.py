"""Statistics layer: empirical distributions, metrics, and densities."""

import math
import random

import pytest

from cographs.cotree import Cotree, cograph_of
from cographs.graph import Cograph, SizeLimitError
from cographs.samplers import make_rng, sample_labeled_cotree_uniform
from cographs.stats import (
    DisconnectedInput,
    EmptyDistribution,
    EmpiricalDistribution,
    binary_induced_keys,
    chi_square_uniform,
    degree_distribution,
    empirical_induced_distribution,
    empirical_kappa_distribution,
    subgraph_density,
    total_variation,
    vertex_connectivity,
    wasserstein1_vs_uniform,
)

from oracles import wasserstein1_grid


# -- EmpiricalDistribution ------------------------------------------------------


def test_from_samples_sorted_and_support_checked():
    d = EmpiricalDistribution.from_samples([0.5, 0.1, 0.9])
    assert d.samples == (0.1, 0.5, 0.9)
    assert d.total == 3 and not d.is_keyed
    with pytest.raises(ValueError):
        EmpiricalDistribution.from_samples([0.5, 1.2], support=(0.0, 1.0))
    with pytest.raises(TypeError):
        EmpiricalDistribution()


def test_from_counts_and_keyed_accessors():
    d = EmpiricalDistribution.from_counts({"a": 3, "b": 1, "c": 0})
    assert d.is_keyed and d.total == 4
    assert d.count("a") == 3 and d.count("missing") == 0
    assert d.probability("b") == 0.25
    assert d.stderr("b") == pytest.approx(math.sqrt(0.25 * 0.75 / 4))
    assert d.items() == [("a", 3), ("b", 1)]  # zero entries dropped
    assert d.probabilities() == {"a": 0.75, "b": 0.25}
    with pytest.raises(ValueError):
        EmpiricalDistribution.from_counts({"a": -1})
    with pytest.raises(ValueError):
        d.samples
    empty = EmpiricalDistribution.from_counts({})
    with pytest.raises(EmptyDistribution):
        empty.probability("a")


def test_merge_same_flavor_only():
    a = EmpiricalDistribution.from_counts({1: 2})
    b = EmpiricalDistribution.from_counts({1: 1, 2: 3})
    m = a.merge(b)
    assert m.count(1) == 3 and m.total == 6
    x = EmpiricalDistribution.from_samples([0.1])
    y = EmpiricalDistribution.from_samples([0.3, 0.2])
    assert x.merge(y).samples == (0.1, 0.2, 0.3)
    with pytest.raises(ValueError):
        a.merge(x)


def test_numeric_means():
    d = EmpiricalDistribution.from_counts({0: 1, 2: 3})
    assert d.mean() == pytest.approx(1.5)
    s = EmpiricalDistribution.from_samples([0.0, 1.0])
    assert s.mean() == pytest.approx(0.5)
    with pytest.raises(EmptyDistribution):
        EmpiricalDistribution.from_samples([]).mean()


# -- cotree statistics ------------------------------------------------------------


def test_vertex_connectivity_known_graphs():
    assert vertex_connectivity(Cotree.from_nested(1)) == 0
    # complete graphs: n - 1
    for n in (2, 3, 5):
        star = Cotree.from_nested((1, *range(1, n + 1)))
        assert vertex_connectivity(star) == n - 1
    # P3 = 1 join (1 union 1): cut the middle vertex
    assert vertex_connectivity(Cotree.from_nested((1, 1, (0, 2, 3)))) == 1
    # C4 = (1 (0 1 2) (0 3 4)): connectivity 2
    assert vertex_connectivity(Cotree.from_nested((1, (0, 1, 2), (0, 3, 4)))) == 2
    with pytest.raises(DisconnectedInput):
        vertex_connectivity(Cotree.from_nested((0, 1, 2)))


def test_degree_distribution_mean_is_edge_density():
    rng = make_rng(31)
    for _ in range(15):
        t = sample_labeled_cotree_uniform(rng.randrange(2, 40), rng)
        g = cograph_of(t)
        d = degree_distribution(t)
        assert d.total == t.n
        assert d.mean() == pytest.approx(2 * g.edge_count / t.n**2)


# -- metrics ------------------------------------------------------------------------


def test_wasserstein1_exact_values():
    # point mass at 0: integral of |1 - x| over [0, 1] is 1/2
    point = EmpiricalDistribution.from_samples([0.0] * 7)
    assert wasserstein1_vs_uniform(point) == pytest.approx(0.5)
    # midpoint grid: m cells, each contributing 2 * (1/(4m))^2 * m... = 1/(4m)
    for m in (1, 4, 20):
        grid = EmpiricalDistribution.from_samples(
            [(2 * i - 1) / (2 * m) for i in range(1, m + 1)]
        )
        assert wasserstein1_vs_uniform(grid) == pytest.approx(1 / (4 * m))
    with pytest.raises(ValueError):
        wasserstein1_vs_uniform(EmpiricalDistribution.from_samples([1.5]))
    with pytest.raises(EmptyDistribution):
        wasserstein1_vs_uniform(EmpiricalDistribution.from_samples([]))
    with pytest.raises(ValueError):
        wasserstein1_vs_uniform(EmpiricalDistribution.from_counts({1: 1}))


def test_wasserstein1_matches_grid_reference():
    rng = random.Random(5)
    xs = [rng.random() ** 2 for _ in range(300)]
    d = EmpiricalDistribution.from_samples(xs)
    assert wasserstein1_vs_uniform(d) == pytest.approx(
        wasserstein1_grid(xs), abs=2e-5
    )


def test_total_variation():
    a = {1: 0.5, 2: 0.5}
    b = {3: 1.0}
    assert total_variation(a, b) == pytest.approx(1.0)
    assert total_variation(a, a) == 0.0
    assert total_variation(a, {1: 0.5, 2: 0.25, 3: 0.25}) == pytest.approx(0.25)
    d = EmpiricalDistribution.from_counts({1: 1, 2: 1})
    assert total_variation(d, a) == 0.0
    with pytest.raises(TypeError):
        total_variation(a, [1, 2])


def test_chi_square_uniform():
    stat, crit, ok = chi_square_uniform({1: 100, 2: 100}, 2)
    assert stat == 0.0 and ok and crit == pytest.approx(10.828, abs=1e-2)
    # missing classes contribute their full expected mass
    stat2, _, _ = chi_square_uniform({1: 200}, 2)
    assert stat2 == pytest.approx(200.0)
    with pytest.raises(ValueError):
        chi_square_uniform({1: 1, 2: 1}, 1)
    with pytest.raises(EmptyDistribution):
        chi_square_uniform({}, 3)


# -- subgraph densities ---------------------------------------------------------------


def test_subgraph_density_exact_small_patterns():
    k5 = Cograph.complete(5)
    k2 = Cograph.complete(2)
    e2 = Cograph.empty(2)
    assert subgraph_density(k2, k5) == pytest.approx(4 / 5)  # 2|E|/n^2
    assert subgraph_density(e2, k5) == pytest.approx(1 / 5)
    p3 = Cograph.path(3)
    assert subgraph_density(k2, p3) == pytest.approx(4 / 9)
    # tuples may repeat vertices: 6 distinct orderings plus 12 tuples of the
    # form {a, a, b} with a ~ b (the repeated pair acts as non-adjacent twins)
    assert subgraph_density(Cograph.path(3), p3) == pytest.approx(18 / 27)
    k3 = Cograph.complete(3)
    assert subgraph_density(k3, Cograph.complete(4)) == pytest.approx(24 / 64)
    # induced P4s in the 5-path: two vertex sets, 4! orderings each
    assert subgraph_density(Cograph.path(4), Cograph.path(5)) == pytest.approx(
        48 / 625
    )
    assert subgraph_density(Cograph.complete(1), k5) == 1.0


def test_subgraph_density_monte_carlo_and_guards():
    k5 = Cograph.complete(5)
    k2 = Cograph.complete(2)
    est, err = subgraph_density(k2, k5, mode="monte-carlo", trials=4000, rng=make_rng(33))
    assert err == pytest.approx(math.sqrt(est * (1 - est) / 4000))
    assert abs(est - 0.8) < 5 * max(err, 1e-9)
    with pytest.raises(ValueError):
        subgraph_density(k2, k5, mode="monte-carlo")
    with pytest.raises(ValueError):
        subgraph_density(k2, k5, mode="nope")
    with pytest.raises(SizeLimitError):
        subgraph_density(Cograph.complete(5), k5)  # k > 4
    with pytest.raises(SizeLimitError):
        subgraph_density(k2, Cograph.empty(2001))
    with pytest.raises(SizeLimitError):
        subgraph_density(Cograph.complete(4), Cograph.empty(600))  # tuple budget


def test_subgraph_densities_sum_to_one():
    g = Cograph.path(5)
    # k = 2 patterns partition all ordered pairs
    total = subgraph_density(Cograph.complete(2), g) + subgraph_density(
        Cograph.empty(2), g
    )
    assert total == pytest.approx(1.0)


# -- empirical laws over samplers ----------------------------------------------------


def test_empirical_induced_distribution_fixed_tree():
    star = Cotree.from_nested((1, 1, 2, 3))
    d = empirical_induced_distribution(lambda rng: star, 2, 50, make_rng(34))
    key = Cotree.from_nested((1, 1, 2)).canonical_key()
    assert d.probability(key) == 1.0
    with pytest.raises(ValueError):
        empirical_induced_distribution(lambda rng: star, 4, 5, make_rng(0))
    with pytest.raises(ValueError):
        empirical_induced_distribution(lambda rng: star, 0, 5, make_rng(0))


def test_binary_induced_keys_counts():
    for k, want in [(1, 1), (2, 2), (3, 12), (4, 120)]:
        assert len(binary_induced_keys(k)) == want
    with pytest.raises(ValueError):
        binary_induced_keys(0)
    with pytest.raises(ValueError):
        binary_induced_keys(7)


def test_empirical_kappa_distribution_small():
    d = empirical_kappa_distribution(2, 30, make_rng(35))
    assert d.probability(1) == 1.0
    d5 = empirical_kappa_distribution(5, 400, make_rng(36), labeled=False)
    assert set(k for k, _ in d5.items()) <= set(range(1, 5))
    assert d5.total == 400
    with pytest.raises(ValueError):
        empirical_kappa_distribution(1, 5, make_rng(0))
