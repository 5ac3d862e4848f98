"""Exact Zariski decompositions and Newton-Okounkov polygons on blown-up surfaces."""

from .cluster import (
    BranchData,
    CurveRecord,
    ModelCurve,
    WeightedCluster,
    chain_to,
    classify,
    has_smooth_branch,
    initial_free_points,
    is_free_cluster,
    local_intersection,
    value_vector,
)
from .errors import (
    InputError,
    InvariantViolation,
    NotAdmissibleError,
    NotBigError,
    NotPseudoeffectiveError,
    PreconditionError,
    UndeterminedError,
    ZariskiNoError,
)
from .lattice import (
    DivisorClass,
    GramCertificate,
    SurfaceModel,
    Verdict,
    intersect,
    is_negative_definite,
    refine_model,
    strict_exceptional,
    transport,
)
from .numbers import QuadraticIrrational
from .okounkov import (
    Flag,
    FlagKind,
    FlagValuation,
    NOPolygon,
    axis_height,
    branch_flag_sequence,
    flag_valuation,
    infinitesimal_transform,
    leftmost,
    make_flag,
    no_polygon,
    polygons_equal,
)
from .points import ClusterPoint, PointKind
from .zariski import (
    CurveUniverse,
    RefinedDecomposition,
    ZariskiDecomposition,
    locally_num_equivalent,
    refine_at,
    smooth_equivalent,
    zariski_decompose,
)

__version__ = "0.1.0"
