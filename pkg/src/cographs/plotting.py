"""Matplotlib figure output for the CLI report path.

Figures are rendered headlessly (Agg) straight to files next to the
delimited output; nothing here opens a window.
"""

from __future__ import annotations

from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .stats import EmpiricalDistribution

__all__ = ["save_distribution_figure"]


def save_distribution_figure(
    dist: EmpiricalDistribution,
    path: str,
    *,
    title: str = "",
    xlabel: str = "",
    reference: Optional[dict] = None,
    max_keys: int = 60,
) -> None:
    """Plot an empirical law to ``path`` (PNG by extension).

    Keyed laws become bar charts over their most frequent ``max_keys``
    outcomes; real-valued laws become histograms on [0, 1].  ``reference``
    may be a mapping from keys to probabilities or anything with a
    ``prob(key)`` method (a limit law); it is overlaid as points.
    """
    fig, ax = plt.subplots(figsize=(7.0, 4.0), dpi=150)
    try:
        if dist.is_keyed:
            items = sorted(dist.items(), key=lambda kv: -kv[1])[:max_keys]
            items.sort(key=lambda kv: str(kv[0]))
            labels = [k.decode("ascii") if isinstance(k, bytes) else str(k) for k, _ in items]
            probs = [c / dist.total for _, c in items]
            xs = range(len(items))
            ax.bar(xs, probs, color="#33557a")
            if reference is not None:
                if hasattr(reference, "prob"):
                    ref = [reference.prob(k) or None for k, _ in items]
                else:
                    ref = [reference.get(k) for k, _ in items]
                pts = [(x, r) for x, r in zip(xs, ref) if r is not None]
                if pts:
                    ax.plot(
                        [x for x, _ in pts],
                        [r for _, r in pts],
                        "o",
                        color="#c23b22",
                        markersize=3,
                        label="limit law",
                    )
                    ax.legend()
            ax.set_xticks(list(xs))
            ax.set_xticklabels(labels, rotation=90, fontsize=5)
            ax.set_ylabel("probability")
        else:
            ax.hist(dist.samples, bins=50, range=(0.0, 1.0), density=True, color="#33557a")
            ax.axhline(1.0, color="#c23b22", linestyle="--", linewidth=1, label="Uniform[0,1]")
            ax.legend()
            ax.set_ylabel("density")
        if title:
            ax.set_title(title)
        if xlabel:
            ax.set_xlabel(xlabel)
        fig.tight_layout()
        fig.savefig(path)
    finally:
        plt.close(fig)
