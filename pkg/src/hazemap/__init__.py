"""hazemap: manifold visualization by merging locally normalized star graphs.

The pipeline: exact k-NN star graphs with density-normalized weights, merged
into a single hazy graph by a pluggable aggregation scheme, completed into a
global metric by all-pairs shortest paths, and embedded in 2D by classical
MDS followed by SMACOF stress minimization.
"""

from .backends import BACKEND_ENV, backend_name
from .datasets import DatasetSpec, generate
from .graphs import (
    DisconnectedGraphError,
    GeodesicResult,
    HazyGraph,
    MultiGraph,
    aggregate,
    assemble,
    geodesics,
    hazy_matrix,
    star_matrix,
)
from .matrices import (
    DissimilarityMatrix,
    TriangleViolation,
    ValidationReport,
    diameter,
    dual,
    merge_pointwise,
    metric_completion,
    symmetrize,
    validate,
)
from .mds import Embedding, MdsConfig, classical_mds, smacof, stress
from .pipeline import PipelineConfig, RunReport, run
from .schemes import (
    AxiomReport,
    ExtScheme,
    GeneratorConjugateScheme,
    HyperbolicScheme,
    MinScheme,
    MScheme,
    ProductLawScheme,
    TruncatedScheme,
    WienerShannonScheme,
    check_axioms,
    conjugate_tnorm,
    fold,
    parse_scheme,
    to_tconorm_check,
)
from .stars import NeighborList, PointCloud, StarGraph, build_star, knn

__version__ = "0.1.0"

__all__ = [
    "BACKEND_ENV",
    "backend_name",
    "DatasetSpec",
    "generate",
    "DisconnectedGraphError",
    "GeodesicResult",
    "HazyGraph",
    "MultiGraph",
    "aggregate",
    "assemble",
    "geodesics",
    "hazy_matrix",
    "star_matrix",
    "DissimilarityMatrix",
    "TriangleViolation",
    "ValidationReport",
    "diameter",
    "dual",
    "merge_pointwise",
    "metric_completion",
    "symmetrize",
    "validate",
    "Embedding",
    "MdsConfig",
    "classical_mds",
    "smacof",
    "stress",
    "PipelineConfig",
    "RunReport",
    "run",
    "AxiomReport",
    "ExtScheme",
    "GeneratorConjugateScheme",
    "HyperbolicScheme",
    "MinScheme",
    "MScheme",
    "ProductLawScheme",
    "TruncatedScheme",
    "WienerShannonScheme",
    "check_axioms",
    "conjugate_tnorm",
    "fold",
    "parse_scheme",
    "to_tconorm_check",
    "NeighborList",
    "PointCloud",
    "StarGraph",
    "build_star",
    "knn",
]
