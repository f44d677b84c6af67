"""Spectral recovery of circular vertex orderings for random circulant graphs.

The package builds circulant graph models, samples Bernoulli edge-thinned
instances, recovers the hidden circular order from the eigenvectors of the
second and third largest adjacency eigenvalues, and quantifies recovery
quality with circular rank metrics and subspace-perturbation diagnostics.
"""

from .layout import (
    AngularEmbedding,
    CircularOrder,
    SpectralCircularOrdering,
    align_to_truth,
    angular_coordinates,
    order_by_angle,
    recover_layout,
    write_point_cloud,
)
from .metrics import (
    BoundParams,
    RankMetricsReport,
    bound_exponent,
    d_k,
    d_k_pairs,
    fit_loglog_slope,
    inverted_pair_set,
    kendall_distance,
    kendall_distance_between,
    rank_metrics,
)
from .model import (
    CirculantModel,
    ClosedFormSpectrum,
    adjacency,
    closed_form_spectrum,
    exact_pair_gap,
    first_row,
    model_matrix,
)
from .sampling import (
    RandomGraphInstance,
    derive_trial_seed,
    perturbation,
    relabel,
    sample,
)
from .spectral import (
    NumericalError,
    SpectralDecomposition,
    frobenius_norm,
    operator_norm,
    top_eigenpairs,
)
from .subspace import (
    PrincipalAngleDecomposition,
    davis_kahan_bound,
    frobenius_gap,
    lower_bound_witness,
    principal_angles,
)

__version__ = "0.1.0"

__all__ = [
    "AngularEmbedding",
    "BoundParams",
    "CircularOrder",
    "CirculantModel",
    "ClosedFormSpectrum",
    "NumericalError",
    "PrincipalAngleDecomposition",
    "RandomGraphInstance",
    "RankMetricsReport",
    "SpectralCircularOrdering",
    "SpectralDecomposition",
    "__version__",
    "adjacency",
    "align_to_truth",
    "angular_coordinates",
    "bound_exponent",
    "closed_form_spectrum",
    "d_k",
    "d_k_pairs",
    "davis_kahan_bound",
    "derive_trial_seed",
    "exact_pair_gap",
    "first_row",
    "fit_loglog_slope",
    "frobenius_gap",
    "frobenius_norm",
    "inverted_pair_set",
    "kendall_distance",
    "kendall_distance_between",
    "lower_bound_witness",
    "model_matrix",
    "operator_norm",
    "order_by_angle",
    "perturbation",
    "principal_angles",
    "rank_metrics",
    "recover_layout",
    "relabel",
    "sample",
    "top_eigenpairs",
    "write_point_cloud",
]
