"""Exact counting tables and generating-series engine against frozen oracles."""

import math

import pytest

from cographs import counts
from cographs._bruteforce import (
    all_labeled_cotrees,
    all_unlabeled_cotrees,
    count_marked_automorphism_triples,
    count_marked_labeled,
)
from cographs.cotree import Cotree
from cographs.series import (
    InsufficientOrder,
    LimitLaw,
    TruncatedSeries,
    egf_count,
    ogf_count,
    pi_distribution,
    pi_u_distribution,
    rho_labeled,
    rho_unlabeled,
    series_D,
    series_L,
    series_M,
    series_Mt0,
    series_U,
    series_U_marked,
    series_V,
    series_Vt0,
    series_marked_labeled,
)

import oracles


# -- exact count tables -------------------------------------------------------


def test_labeled_count_tables():
    assert counts.labeled_tree_counts(7) == oracles.ELL
    assert counts.cograph_counts_labeled(7) == oracles.M_COUNTS
    assert counts.labeled_forest_counts(7) == oracles.E_COUNTS


def test_unlabeled_count_tables():
    assert counts.unlabeled_tree_counts(10) == oracles.U_COUNTS
    assert counts.cograph_counts_unlabeled(10) == oracles.V_COUNTS


def test_counts_match_exhaustive_enumeration():
    for n in range(1, 6):
        assert len(all_labeled_cotrees(n)) == oracles.M_COUNTS[n]
    for n in range(1, 8):
        assert len(all_unlabeled_cotrees(n)) == oracles.V_COUNTS[n]


def test_scaled_tables_track_exact_values():
    sc = counts.labeled_scaled(60)
    exact = counts.labeled_exact(60)
    for n in (1, 2, 5, 10, 30, 60):
        want = exact.ell[n] * counts.RHAT**n / math.factorial(n)
        assert sc.T[n] == pytest.approx(want, rel=1e-12)
        assert abs(sc.T[n] / want - 1.0) <= sc.band
    scu = counts.unlabeled_scaled(60)
    exactu = counts.unlabeled_exact(60)
    for n in (1, 2, 5, 10, 30, 60):
        want = exactu.u[n] * counts.QHAT**n
        assert scu.Tu[n] == pytest.approx(want, rel=1e-12)


def test_scaled_band_is_small():
    # A fresh table grown to n=1000 certifies a tight band; the module
    # singleton's band covers its *current* length, which other tests may
    # have grown, so only a coarser (still tiny) ceiling is order-stable.
    fresh = counts.LabeledScaled()
    fresh.ensure(1000)
    assert 0 < fresh.band < 1e-10
    assert 0 < counts.scaled_relative_band(1000) < 1e-7


def test_divisors_desc():
    assert counts.divisors_desc(12) == (12, 6, 4, 3, 2, 1)
    assert counts.divisors_desc(1) == (1,)
    assert counts.divisors_desc(13) == (13, 1)


# -- series engine -------------------------------------------------------------


def test_truncated_series_ring_ops():
    z = TruncatedSeries.z(6)
    geom = (1 - z).inverse()
    assert geom.coeffs() == tuple(1 for _ in range(7))
    e = z.exp()
    assert [e.coeff(k) * math.factorial(k) for k in range(7)] == [1] * 7
    assert (geom * (1 - z)) == TruncatedSeries.one(6)
    assert geom.derivative() == (geom * geom).truncate(5)
    assert z.shift(2).coeff(3) == 1 and z.shift(2).order == 6
    assert z.compose_zr(3, order=6).coeff(3) == 1
    assert geom.pow_int(2).coeff(4) == 5  # binomial(4+1, 1)
    with pytest.raises(ValueError):
        geom.exp()  # nonzero constant term
    with pytest.raises(ValueError):
        z.inverse()  # zero constant term
    with pytest.raises(InsufficientOrder):
        z.compose_zr(2, order=20)


def test_series_L_and_M_match_tables():
    L = series_L(7)
    M = series_M(7)
    assert [egf_count(L, n) for n in range(8)] == oracles.ELL
    assert [egf_count(M, n) for n in range(8)] == oracles.M_COUNTS
    # forests: exp(L) has n! [z^n] = E_n
    E = L.exp()
    assert [egf_count(E, n) for n in range(8)] == oracles.E_COUNTS


def test_labeled_fixed_point_identity():
    # L = z + exp(L) - 1 - L, i.e. 2L - z + 1 = exp(L)
    N = 12
    L = series_L(N)
    assert 2 * L - TruncatedSeries.z(N) + 1 == L.exp()


def test_marked_labeled_identities():
    N = 10
    Lp, Lbullet, Leven, Lodd = series_marked_labeled(N)
    E = series_L(N).exp()
    # pointing: L^bullet = z L'
    assert Lbullet == Lp.shift(1)
    # the even/odd system and its diagonal sum
    assert Leven == 1 + (E - 1) * Lodd
    assert Lodd == (E - 1) * Leven
    assert Leven + Lodd == Lp
    # derivative of the fixed point: L' (2 - exp(L)) = 1
    assert Lp * (2 - E) == TruncatedSeries.one(N)


def test_series_Mt0_single_leaf_and_cherries():
    leaf = Cotree.from_nested(1)
    got = series_Mt0(leaf, 5)
    assert [egf_count(got, n) for n in range(1, 6)] == oracles.MT0_SINGLE_LEAF
    for dec in (0, 1):
        cherry = Cotree.from_nested((dec, 1, 2))
        got = series_Mt0(cherry, 6)
        assert [egf_count(got, n) for n in range(2, 7)] == oracles.MT0_CHERRY


def test_series_Mt0_matches_bruteforce_all_shapes():
    # every induced shape with k = 2 marks, checked against exhaustive
    # (tree, tuple) pair counts on up to 4 vertices
    for n in range(2, 5):
        buckets = count_marked_labeled(n, 2)
        for dec in (0, 1):
            t0 = Cotree.from_nested((dec, 1, 2))
            assert buckets[t0.canonical_key()] == egf_count(
                series_Mt0(t0, n), n
            )


def test_series_Mt0_input_validation():
    with pytest.raises(ValueError):
        series_Mt0(Cotree.from_nested((1, None, None)), 6)  # unlabeled
    with pytest.raises(InsufficientOrder):
        series_Mt0(Cotree.from_nested((1, 1, 2)), 1)


def test_series_U_V_match_tables():
    U = series_U(10)
    V = series_V(10)
    assert [ogf_count(U, n) for n in range(11)] == oracles.U_COUNTS
    assert [ogf_count(V, n) for n in range(11)] == oracles.V_COUNTS


def test_unlabeled_fixed_point_identity():
    # U = z + (exp(U) - 1 - U) + D exp(U) on truncations
    N = 10
    U = series_U(N)
    D = series_D(N)
    E = U.exp()
    assert U == TruncatedSeries.z(N) + (E - 1 - U) + D * E


def test_series_D_low_coefficients():
    D = series_D(5)
    for n, (num, den) in enumerate(oracles.D_FRACTIONS):
        c = D.coeff(n)
        assert c.numerator == num and c.denominator == den


def test_marked_unlabeled_identities():
    N = 10
    Up, Ubullet, Ustar, Ueven, Uodd = series_U_marked(N)
    U = series_U(N)
    D = series_D(N)
    E = U.exp()
    one = TruncatedSeries.one(N)
    assert Ubullet == Up.shift(1)
    assert Ustar == Ueven + Uodd
    # fixed point of the marked path series, route through exp and D
    assert Ustar == one + Ustar * (E - 1) + Ustar * D * E
    grow = E * (1 + D) - 1  # equals 2U - z on truncations
    assert grow == 2 * U - TruncatedSeries.z(N)
    assert Ueven == one + grow * Uodd
    assert Uodd == grow * Ueven


def test_series_Vt0_cherries():
    # V_t0 counts (tree, automorphism, tuple) triples with an EGF-style
    # n! normalization even though the underlying objects are unlabeled
    for dec in (0, 1):
        cherry = Cotree.from_nested((dec, 1, 2))
        got = series_Vt0(cherry, 6)
        assert [egf_count(got, n) for n in range(2, 7)] == oracles.VT0_CHERRY


def test_series_Vt0_matches_bruteforce_triples():
    for n in range(2, 5):
        buckets = count_marked_automorphism_triples(n, 2)
        for dec in (0, 1):
            t0 = Cotree.from_nested((dec, 1, 2))
            got = series_Vt0(t0, n)
            assert buckets[t0.canonical_key()] == egf_count(got, n)


# -- radii and limit laws ---------------------------------------------------------


def test_rho_labeled_closed_form():
    # frozen value is the correctly rounded double of 2 ln 2 - 1; the naive
    # float expression lands one ulp away through cancellation
    assert rho_labeled() == oracles.RHO_LABELED
    naive = 2 * math.log(2) - 1
    assert abs(rho_labeled() - naive) <= math.ulp(naive)


def test_rho_unlabeled_brackets_literature_value():
    r200 = rho_unlabeled(N=200)
    r400 = rho_unlabeled(N=400)
    assert abs(r400 - oracles.RHO_UNLABELED_APPROX) < 1e-3
    # truncation approaches the radius from above
    assert r200 >= r400 - 1e-9
    with pytest.raises(InsufficientOrder):
        rho_unlabeled(N=3)


def test_pi_distribution_values():
    law = pi_distribution(40)
    assert law.prob(1) == pytest.approx(oracles.PI_1, rel=1e-12)
    assert law.prob(2) == pytest.approx(oracles.PI_2, rel=1e-12)
    assert law.prob(41) == 0.0
    assert law.total() + law.tail == pytest.approx(1.0)
    assert 0.0 < law.total() < 1.0
    # probabilities decay but sum stays well below 1 at any finite jmax
    assert law.probabilities[-1] < law.probabilities[0]


def test_pi_u_distribution_values():
    law = pi_u_distribution(20, N=200)
    # pi^u_1 = rho_u, pi^u_2 = 2 rho_u^2 (v_2 = 2)
    assert law.prob(1) == pytest.approx(law.rho, rel=1e-12)
    assert law.prob(2) == pytest.approx(2 * law.rho**2, rel=1e-12)
    assert law.total() < 1.0


def test_limit_law_json_round_trip_and_validation():
    law = pi_distribution(10)
    again = LimitLaw.from_json_dict(law.to_json_dict())
    assert again == law
    with pytest.raises(ValueError):
        LimitLaw(rho=0.3, probabilities=(-0.1, 0.2), tail=0.9)
    with pytest.raises(ValueError):
        LimitLaw(rho=0.3, probabilities=(0.7, 0.7), tail=0.0)


def test_count_extractors_reject_non_integers():
    with pytest.raises(ValueError):
        ogf_count(series_D(4), 2)  # 1/2
    half = TruncatedSeries([0, 0, "1/3"], order=3)
    with pytest.raises(ValueError):
        egf_count(half, 2)  # 2!/3 is not an integer
