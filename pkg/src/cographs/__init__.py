"""Random cographs: exact enumeration, uniform samplers, and statistics.

The package is organized around canonical cotrees - the rooted trees with
alternating 0/1 decorations that are in bijection with cographs:

* :mod:`cographs.graph`    - dense cograph representation and recognition
* :mod:`cographs.cotree`   - cotrees, canonical forms, induced subtrees
* :mod:`cographs.counts`   - exact integer counting and scaled weight tables
* :mod:`cographs.series`   - truncated rational generating series, radii,
  and the connectivity limit laws
* :mod:`cographs.samplers` - exact-uniform (labeled and unlabeled),
  Boltzmann, and decorated-binary-tree generators
* :mod:`cographs.stats`    - empirical distributions and distances
* :mod:`cographs.formats`  - delimited output, P5 adjacency rendering,
  experiment specs
* :mod:`cographs.cli`      - the ``cographs`` command
"""

from .graph import (
    Cograph,
    SizeLimitError,
    canonical_form_small,
    complement,
    disjoint_union,
    join,
)
from .cotree import (
    CanonicalCotree,
    Cotree,
    CotreeBuilder,
    as_canonical,
    canonical_cotree_of,
    cograph_of,
    degree_vector,
    first_common_ancestor,
    format_cotree,
    induced_cotree,
    leaf_degree,
    leaf_dfs_order,
    parse_cotree,
)
from .counts import (
    cograph_counts_labeled,
    cograph_counts_unlabeled,
    labeled_tree_counts,
    unlabeled_tree_counts,
)
from .series import (
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
from .samplers import (
    IterationCapExceeded,
    PrecisionExhausted,
    SampleConfig,
    binary_degree_samples,
    flip_involution,
    make_rng,
    rank_order,
    sample,
    sample_binary_decorated,
    sample_boltzmann_labeled,
    sample_labeled_cotree_uniform,
    sample_unlabeled_cotree_uniform,
    spawn_rngs,
)
from .stats import (
    DisconnectedInput,
    EmpiricalDistribution,
    EmptyDistribution,
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
from .formats import (
    ExperimentSpec,
    pgm_to_adjacency,
    read_pgm,
    render_adjacency_pgm,
)

__version__ = "0.1.0"

__all__ = [
    "Cograph",
    "SizeLimitError",
    "canonical_form_small",
    "complement",
    "disjoint_union",
    "join",
    "CanonicalCotree",
    "Cotree",
    "CotreeBuilder",
    "as_canonical",
    "canonical_cotree_of",
    "cograph_of",
    "degree_vector",
    "first_common_ancestor",
    "format_cotree",
    "induced_cotree",
    "leaf_degree",
    "leaf_dfs_order",
    "parse_cotree",
    "cograph_counts_labeled",
    "cograph_counts_unlabeled",
    "labeled_tree_counts",
    "unlabeled_tree_counts",
    "InsufficientOrder",
    "LimitLaw",
    "TruncatedSeries",
    "egf_count",
    "ogf_count",
    "pi_distribution",
    "pi_u_distribution",
    "rho_labeled",
    "rho_unlabeled",
    "series_D",
    "series_L",
    "series_M",
    "series_Mt0",
    "series_U",
    "series_U_marked",
    "series_V",
    "series_Vt0",
    "series_marked_labeled",
    "IterationCapExceeded",
    "PrecisionExhausted",
    "SampleConfig",
    "binary_degree_samples",
    "flip_involution",
    "make_rng",
    "rank_order",
    "sample",
    "sample_binary_decorated",
    "sample_boltzmann_labeled",
    "sample_labeled_cotree_uniform",
    "sample_unlabeled_cotree_uniform",
    "spawn_rngs",
    "DisconnectedInput",
    "EmpiricalDistribution",
    "EmptyDistribution",
    "binary_induced_keys",
    "chi_square_uniform",
    "degree_distribution",
    "empirical_induced_distribution",
    "empirical_kappa_distribution",
    "subgraph_density",
    "total_variation",
    "vertex_connectivity",
    "wasserstein1_vs_uniform",
    "ExperimentSpec",
    "pgm_to_adjacency",
    "read_pgm",
    "render_adjacency_pgm",
    "__version__",
]
