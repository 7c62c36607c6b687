"""End-to-end acceptance gates.

Each test runs one named check from :mod:`cographs.acceptance` at the
pinned seed and prints its one-line verdict (budget timings included in
the check itself).  These are the release criteria for the package: the
statistical ones use large sample sizes, so this module is slow by
design — run ``pytest tests/test_acceptance.py`` on its own when
iterating elsewhere.
"""

from cographs.acceptance import run_suite, suite_names

SEED = 20260814


def _run(name: str, capsys) -> None:
    res = run_suite([name], seed=SEED)[0]
    with capsys.disabled():
        print(f"\n{res.line()} [{res.elapsed:.1f}s]")
    assert res.passed, res.line()


def test_suite_registry_complete():
    assert suite_names() == [
        "exact-counts",
        "series-identities",
        "marked-series-oracles",
        "radii",
        "uniformity-small-n",
        "binary-degree-law",
        "degree-wasserstein",
        "induced-cotree-buckets",
        "kappa-limit-law",
        "connectivity-probability",
        "connectivity-oracle",
        "figure-render",
    ]


def test_01_exact_counts(capsys):
    _run("exact-counts", capsys)


def test_02_series_identities(capsys):
    _run("series-identities", capsys)


def test_03_marked_series_oracles(capsys):
    _run("marked-series-oracles", capsys)


def test_04_radii(capsys):
    _run("radii", capsys)


def test_05_uniformity_small_n(capsys):
    _run("uniformity-small-n", capsys)


def test_06_binary_degree_law(capsys):
    _run("binary-degree-law", capsys)


def test_07_degree_wasserstein(capsys):
    _run("degree-wasserstein", capsys)


def test_08_induced_cotree_buckets(capsys):
    _run("induced-cotree-buckets", capsys)


def test_09_kappa_limit_law(capsys):
    _run("kappa-limit-law", capsys)


def test_10_connectivity_probability(capsys):
    _run("connectivity-probability", capsys)


def test_11_connectivity_oracle(capsys):
    _run("connectivity-oracle", capsys)


def test_12_figure_render(capsys):
    _run("figure-render", capsys)
