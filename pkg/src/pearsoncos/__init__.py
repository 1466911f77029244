"""Pearson's r versus Salton's cosine: the norm-ratio line law, data-driven
cosine thresholds, and thresholded similarity networks."""

__version__ = "0.1.0"

from .errors import MatrixFormatError, PearsonCosError, UndefinedMeasureError
from .export import (
    Edge,
    SimilarityGraph,
    build_graph,
    emit_cloud,
    emit_dot,
    emit_edgelist,
    emit_pajek,
)
from .matrix_io import DataMatrix, cocitation, dump_matrix, load_matrix, usable_entities
from .measures import (
    SimilarityKind,
    SimilarityMatrix,
    cosine,
    dice,
    jaccard,
    pairwise_matrix,
    pearson,
    pseudo_cosine,
)
from .sheaf import (
    CloudPoint,
    Envelope,
    SheafLine,
    cloud,
    cos_from_jaccard,
    envelope,
    invert_cos,
    jaccard_from_cos,
    line_params,
    predict_r,
    predict_r_from_jaccard,
)
from .thresholds import ThresholdReport, compute_thresholds, pair_threshold, verify_guarantee
from .vectors import EntityVector, NormProfile, is_constant, l1_norm, l2_norm, norm_ratio, profile

__all__ = [
    "CloudPoint",
    "DataMatrix",
    "Edge",
    "EntityVector",
    "Envelope",
    "MatrixFormatError",
    "NormProfile",
    "PearsonCosError",
    "SheafLine",
    "SimilarityGraph",
    "SimilarityKind",
    "SimilarityMatrix",
    "ThresholdReport",
    "UndefinedMeasureError",
    "build_graph",
    "cloud",
    "cocitation",
    "compute_thresholds",
    "cos_from_jaccard",
    "cosine",
    "dice",
    "dump_matrix",
    "emit_cloud",
    "emit_dot",
    "emit_edgelist",
    "emit_pajek",
    "envelope",
    "invert_cos",
    "is_constant",
    "jaccard",
    "jaccard_from_cos",
    "l1_norm",
    "l2_norm",
    "line_params",
    "load_matrix",
    "norm_ratio",
    "pair_threshold",
    "pairwise_matrix",
    "pearson",
    "predict_r",
    "predict_r_from_jaccard",
    "profile",
    "pseudo_cosine",
    "usable_entities",
    "verify_guarantee",
]
