"""Precision-recall analysis between distributions.

Two entry levels:

* exact math on histograms (`DiscreteDistribution`, `prd_curve`,
  `membership_oracle`, `decompose`, `tv_distance`, F-beta summaries), and
* a sample pipeline that quantizes embedding vectors with mini-batch k-means
  and averages curves over repeated clusterings (`FeatureSet`, `averaged_prd`).

The `prd` console script wraps both plus the mode add/drop experiment harness.
"""

from .core import (
    DEFAULT_RESOLUTION,
    Decomposition,
    DimensionMismatchError,
    DiscreteDistribution,
    DomainError,
    FBetaSummary,
    InfeasiblePairError,
    LambdaGrid,
    PrdCurve,
    PrdError,
    PrdPoint,
    alpha_beta,
    decompose,
    f_beta,
    fbeta_summary,
    interpolate_set,
    max_f_beta,
    max_precision,
    max_recall,
    membership_oracle,
    prd_curve,
    tv_distance,
)
from .clustering import (
    ClusterModel,
    FeatureSet,
    HistogramPair,
    InsufficientDataError,
    assign,
    averaged_prd,
    build_histograms,
    clustered_prd_analysis,
    minibatch_kmeans,
)
from .experiment import MissingClassError, gaussian_blobs, mode_experiment
from .featurefile import FeatureFileError, read_feature_file, write_feature_file

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_RESOLUTION",
    "Decomposition",
    "DimensionMismatchError",
    "DiscreteDistribution",
    "DomainError",
    "FBetaSummary",
    "InfeasiblePairError",
    "LambdaGrid",
    "PrdCurve",
    "PrdError",
    "PrdPoint",
    "alpha_beta",
    "decompose",
    "f_beta",
    "fbeta_summary",
    "interpolate_set",
    "max_f_beta",
    "max_precision",
    "max_recall",
    "membership_oracle",
    "prd_curve",
    "tv_distance",
    "ClusterModel",
    "FeatureSet",
    "HistogramPair",
    "InsufficientDataError",
    "assign",
    "averaged_prd",
    "build_histograms",
    "clustered_prd_analysis",
    "minibatch_kmeans",
    "MissingClassError",
    "gaussian_blobs",
    "mode_experiment",
    "FeatureFileError",
    "read_feature_file",
    "write_feature_file",
]
