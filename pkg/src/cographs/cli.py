"""Command-line interface.

Subcommands:

* ``count``  - exact coefficient tables (labeled ell_n/m_n, unlabeled u_n/v_n)
* ``series`` - exact generating-series coefficients or limit laws
* ``sample`` - draw one cotree and print/serialize it
* ``stats``  - empirical experiments (degree W1, induced buckets, kappa law)
* ``render`` - adjacency-matrix portable graymap in cotree DFS order
* ``check``  - the release-gate suite with a JSON report

Every command is deterministic given its flags: the seed pins the sampler
streams and nothing else (timestamps, machine state) leaks into outputs,
so reruns reproduce files byte for byte.  Wall-clock timing of ``check``
goes to stderr only, keeping stdout and report files stable.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Optional, Sequence

from . import acceptance, counts, formats, samplers, series, stats
from .cotree import Cotree, cograph_of, leaf_degree, parse_cotree
from .formats import ExperimentSpec
from .graph import SizeLimitError
from .samplers import SampleConfig

COUNT_CAP = 1000
SERIES_CAP = 1000

_SERIES_KINDS = {
    "L": (series.series_L, "labeled trees (EGF)"),
    "M": (series.series_M, "labeled canonical cotrees (EGF)"),
    "U": (series.series_U, "unlabeled trees with automorphism (OGF)"),
    "V": (series.series_V, "unlabeled canonical cotrees (OGF)"),
    "D": (series.series_D, "no-fixed-root-child pairs (OGF)"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cographs",
        description="Exact enumeration, uniform sampling, and statistics "
        "of cographs via canonical cotrees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact count tables")
    p.add_argument(
        "--kind",
        choices=("labeled", "unlabeled"),
        default="labeled",
        help="which family to count",
    )
    p.add_argument("--n", type=int, default=10, help="largest size, >= 0")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("series", help="exact series coefficients / limit laws")
    p.add_argument(
        "--kind",
        choices=tuple(_SERIES_KINDS) + ("pi", "pi-u"),
        default="L",
        help="series name, or pi/pi-u for the connectivity limit laws",
    )
    p.add_argument("--n", type=int, default=10, help="truncation order / jmax")
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("sample", help="draw one cotree")
    _add_sampling_flags(p)
    p.add_argument(
        "--format",
        choices=("cotree", "edges", "json"),
        default="cotree",
        help="cotree text, edge list, or a JSON object with both",
    )
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--spec", help="load all parameters from an experiment spec")
    p.add_argument("--dump-spec", help="also write the resolved spec JSON here")

    p = sub.add_parser("stats", help="empirical experiments")
    p.add_argument(
        "--metric",
        choices=("degree-w1", "induced", "kappa"),
        default="degree-w1",
    )
    _add_sampling_flags(p)
    p.add_argument("--k", type=int, default=3, help="marked leaves (induced)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--jmax", type=int, default=60, help="limit-law truncation (kappa)")
    p.add_argument("--tolerance", type=float, help="optional pass/fail bound")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--fig", help="also render a matplotlib figure to this file")
    p.add_argument("--spec", help="load all parameters from an experiment spec")
    p.add_argument("--dump-spec", help="also write the resolved spec JSON here")

    p = sub.add_parser("render", help="P5 adjacency matrix in cotree DFS order")
    _add_sampling_flags(p)
    p.add_argument("--in", dest="infile", help="read a cotree text instead of sampling")
    p.add_argument("--out", required=True, help="output .pgm path")
    p.add_argument("--spec", help="load sampling parameters from an experiment spec")

    p = sub.add_parser("check", help="run release-gate checks")
    p.add_argument(
        "suites",
        nargs="*",
        default=["all"],
        choices=acceptance.suite_names() + ["all"],
        help="suite names (default: all)",
    )
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.add_argument("--out", help="write the JSON report here")
    return parser


def _add_sampling_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=10, help="target size (leaves)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--kind",
        choices=(
            "labeled-exact",
            "unlabeled-exact",
            "labeled-boltzmann",
            "binary-decorated",
        ),
        default="labeled-exact",
    )
    p.add_argument(
        "--epsilon",
        type=float,
        default=0.1,
        help="size window for the Boltzmann sampler",
    )
    p.add_argument(
        "--p",
        type=float,
        default=0.5,
        help="decoration bias for the binary sampler",
    )


def _sample_config(args: argparse.Namespace) -> SampleConfig:
    return SampleConfig(
        n=args.n,
        seed=args.seed,
        kind=args.kind,
        window=args.epsilon,
        p=args.p,
    )


def _resolve_spec(args: argparse.Namespace, command: str) -> ExperimentSpec:
    if getattr(args, "spec", None):
        with open(args.spec, encoding="utf-8") as fh:
            spec = ExperimentSpec.loads(fh.read())
        if spec.command != command:
            raise ValueError(
                f"spec file is for command {spec.command!r}, not {command!r}"
            )
        # output destinations are not part of the experiment identity, so
        # explicit flags still win over the loaded spec
        overrides = {}
        if getattr(args, "out", None) is not None:
            overrides["out"] = args.out
        if getattr(args, "fig", None) is not None:
            overrides["fig"] = args.fig
        return replace(spec, **overrides) if overrides else spec
    return ExperimentSpec(
        command=command,
        sample=_sample_config(args),
        metric=getattr(args, "metric", None),
        k=getattr(args, "k", 3),
        trials=getattr(args, "trials", 1000),
        jmax=getattr(args, "jmax", 60),
        tolerance=getattr(args, "tolerance", None),
        fmt=getattr(args, "format", "csv"),
        out=getattr(args, "out", None),
        fig=getattr(args, "fig", None),
    )


def _write_text(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# count / series
# ---------------------------------------------------------------------------


def cmd_count(kind: str, max_n: int, fmt: str = "csv", out=None) -> int:
    """Exact coefficient table up to ``max_n`` (0 gives an empty table)."""
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    if max_n > COUNT_CAP:
        raise SizeLimitError(f"max_n {max_n} exceeds cap {COUNT_CAP}")
    if kind == "labeled":
        header = ("n", "ell", "m")
        ell = counts.labeled_tree_counts(max_n)
        m = counts.cograph_counts_labeled(max_n)
        rows = [(n, ell[n], m[n]) for n in range(1, max_n + 1)]
    else:
        header = ("n", "u", "v")
        u = counts.unlabeled_tree_counts(max_n)
        v = counts.cograph_counts_unlabeled(max_n)
        rows = [(n, u[n], v[n]) for n in range(1, max_n + 1)]
    if fmt == "json":
        payload = {
            "kind": kind,
            "columns": list(header),
            "rows": [[r[0], str(r[1]), str(r[2])] for r in rows],
        }
        _write_text(json.dumps(payload, indent=2) + "\n", out)
    else:
        formats.write_table_csv(header, rows, out if out else sys.stdout)
    return 0


def cmd_series(kind: str, order: int, out=None) -> int:
    if kind in ("pi", "pi-u"):
        if order < 1:
            raise ValueError("jmax must be >= 1")
        law = (
            series.pi_distribution(order)
            if kind == "pi"
            else series.pi_u_distribution(order)
        )
        _write_text(json.dumps(law.to_json_dict(), indent=2) + "\n", out)
        return 0
    if order < 1:
        raise ValueError("order must be >= 1")
    if order > SERIES_CAP:
        raise SizeLimitError(f"order {order} exceeds cap {SERIES_CAP}")
    fn, _ = _SERIES_KINDS[kind]
    formats.write_series_csv(fn(order), out if out else sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# sample / render
# ---------------------------------------------------------------------------


def _edge_lines(t: Cotree) -> list[str]:
    g = cograph_of(t)
    lines = [f"{g.n} {g.edge_count}"]
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if g.adjacent(i, j):
                lines.append(f"{i + 1} {j + 1}")
    return lines


def cmd_sample(spec: ExperimentSpec) -> int:
    t = samplers.sample(spec.sample)
    if spec.fmt == "edges":
        text = "\n".join(_edge_lines(t)) + "\n"
    elif spec.fmt == "json":
        g = cograph_of(t)
        payload = {
            "n": t.n,
            "kind": spec.sample.kind,
            "seed": spec.sample.seed,
            "cotree": str(t),
            "edges": [
                [i + 1, j + 1]
                for i in range(g.n)
                for j in range(i + 1, g.n)
                if g.adjacent(i, j)
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = str(t) + "\n"
    _write_text(text, spec.out)
    return 0


def cmd_render(spec: ExperimentSpec, infile: Optional[str] = None) -> int:
    if infile is not None:
        with open(infile, encoding="utf-8") as fh:
            t = parse_cotree(fh.read())
    else:
        t = samplers.sample(spec.sample)
    if spec.out is None:
        raise ValueError("render requires --out (binary output)")
    with open(spec.out, "wb") as fh:
        formats.render_adjacency_pgm(t, fh)
    return 0


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------


def _tree_sampler(config: SampleConfig):
    if config.kind == "labeled-exact":
        return lambda rng: samplers.sample_labeled_cotree_uniform(config.n, rng)
    if config.kind == "unlabeled-exact":
        return lambda rng: samplers.sample_unlabeled_cotree_uniform(config.n, rng)
    if config.kind == "labeled-boltzmann":
        return lambda rng: samplers.sample_boltzmann_labeled(
            config.n, rng, window=config.window
        )
    raise ValueError(f"metric does not support kind {config.kind!r}")


def _stats_degree_w1(spec: ExperimentSpec, rng) -> tuple:
    fn = _tree_sampler(spec.sample)
    vals = []
    for _ in range(spec.trials):
        t = fn(rng)
        leaves = t.leaves()
        v = leaves[rng.randrange(t.n)]
        vals.append(leaf_degree(t, v) / t.n)
    dist = stats.EmpiricalDistribution.from_samples(vals, support=(0.0, 1.0))
    value = stats.wasserstein1_vs_uniform(dist)
    return dist, "w1-degree-vs-uniform", value, None


def _stats_induced(spec: ExperimentSpec, rng) -> tuple:
    fn = _tree_sampler(spec.sample)
    dist = stats.empirical_induced_distribution(fn, spec.k, spec.trials, rng)
    value = None
    if spec.k <= 6:
        keys = stats.binary_induced_keys(spec.k)
        freqs = [dist.probability(key) for key in keys]
        uniform = 1.0 / len(keys)
        value = {
            "binary_max_abs_dev": max(abs(f - uniform) for f in freqs),
            "nonbinary_mass": 1.0 - sum(freqs),
        }
    return dist, "induced-cotree-buckets", value, None


def _stats_kappa(spec: ExperimentSpec, rng) -> tuple:
    labeled = spec.sample.kind == "labeled-exact"
    if spec.sample.kind not in ("labeled-exact", "unlabeled-exact"):
        raise ValueError("kappa statistics need an exact uniform sampler")
    dist = stats.empirical_kappa_distribution(
        spec.sample.n, spec.trials, rng, labeled=labeled
    )
    law = (
        series.pi_distribution(spec.jmax)
        if labeled
        else series.pi_u_distribution(spec.jmax)
    )
    value = {"tv_vs_limit_law": stats.total_variation(dist, law)}
    return dist, "kappa-vs-limit-law", value, law


def cmd_stats(spec: ExperimentSpec) -> int:
    rng = samplers.make_rng(spec.sample.seed)
    if spec.metric == "degree-w1":
        dist, metric, value, reference = _stats_degree_w1(spec, rng)
    elif spec.metric == "induced":
        dist, metric, value, reference = _stats_induced(spec, rng)
    elif spec.metric == "kappa":
        dist, metric, value, reference = _stats_kappa(spec, rng)
    else:
        raise ValueError(f"unknown metric {spec.metric!r}")
    passed = None
    scalar = value
    if isinstance(value, dict):
        scalar = max(value.values()) if value else None
    if spec.tolerance is not None and scalar is not None:
        passed = scalar <= spec.tolerance
    if spec.fmt == "json":
        _write_text(
            formats.summary_json(spec, metric, value, spec.tolerance, passed)
            + "\n",
            spec.out,
        )
    else:
        target = spec.out if spec.out else sys.stdout
        if dist.is_keyed:
            formats.write_keyed_csv(dist, target)
        else:
            formats.write_samples_csv(dist, target)
    if spec.fig:
        from . import plotting

        plotting.save_distribution_figure(
            dist,
            spec.fig,
            title=metric,
            xlabel="value",
            reference=reference,
        )
    return 0 if passed is not False else 1


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def cmd_check(suites: Sequence[str], seed: int, out: Optional[str] = None) -> int:
    names = acceptance.suite_names() if "all" in suites else list(dict.fromkeys(suites))

    def progress(res) -> None:
        sys.stdout.write(res.line() + "\n")
        sys.stdout.flush()
        sys.stderr.write(f"  [{res.name}: {res.elapsed:.1f}s]\n")

    results = acceptance.run_suite(names, seed=seed, progress=progress)
    all_passed = all(r.passed for r in results)
    report = {
        "seed": seed,
        "results": [r.to_json_dict() for r in results],
        "all_passed": all_passed,
    }
    if out:
        _write_text(json.dumps(report, indent=2) + "\n", out)
    sys.stdout.write(
        f"{sum(r.passed for r in results)}/{len(results)} checks passed\n"
    )
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "count":
            return cmd_count(args.kind, args.n, args.format, args.out)
        if args.command == "series":
            return cmd_series(args.kind, args.n, args.out)
        if args.command == "sample":
            spec = _resolve_spec(args, "sample")
            if args.dump_spec:
                _write_text(spec.dumps() + "\n", args.dump_spec)
            return cmd_sample(spec)
        if args.command == "stats":
            spec = _resolve_spec(args, "stats")
            if args.dump_spec:
                _write_text(spec.dumps() + "\n", args.dump_spec)
            return cmd_stats(spec)
        if args.command == "render":
            spec = _resolve_spec(args, "render")
            return cmd_render(spec, infile=args.infile)
        return cmd_check(args.suites, args.seed, args.out)
    except (
        ValueError,
        SizeLimitError,
        samplers.PrecisionExhausted,
        samplers.IterationCapExceeded,
        OSError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
