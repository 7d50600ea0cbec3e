"""Embedding counts, posterior entropies and extremal scans for binary
patterns observed through deletions."""

from .core import (
    CapacityError,
    DegenerateDistributionError,
    DEFAULT_GUARD,
    all_bitstrings,
    binomial,
    complement,
    reverse,
    runs,
)
from .distribution import WeightHistogram, empirical_moments, exact_histogram, sample_histogram
from .embedding import WeightDistribution, count_embeddings, posterior, total_masks, uncertainty_set
from .entropy import (
    EntropyEstimate,
    EntropyReport,
    entropy_report,
    min_entropy,
    moment_entropy_estimate,
    renyi2_entropy,
    shannon_entropy,
)
from .extremal import (
    ExtremalInvariantError,
    ExtremalResult,
    OrderingTable,
    check_entropy_min,
    ordering_table,
    search_kappa_min,
    verify_kappa_max,
)
from .moments import (
    GaussianDiagnostics,
    KappaDecomposition,
    MomentSet,
    asymptotic_mean,
    asymptotic_variance,
    exact_moment,
    exact_moment_set,
    gaussian_diagnostics,
    gaussian_limit_moments,
    kappa_decomposition,
    kappa_max,
    kappa_squared,
    raw_moments,
    variance_coefficient,
)

__version__ = "0.1.0"
