"""Predimension calculus on finite simple rank-<=3 matroids ("planes").

The library computes the delta-predimension and Mason's alpha, decides
hereditary nonnegativity (K0) and strong/k-strong subsets, extracts
intrinsic closures and d-values, amalgamates planes freely or canonically,
decomposes strong extensions into primitive steps, enumerates small planes
up to isomorphism, and grows bounded approximations to the generic plane
with an auditable genericity report.
"""

from .amalgam import (
    AmalgamResult,
    Decomposition,
    FreeAmalgam,
    PrimitiveCase,
    StrongEmbedding,
    canonical_amalgam,
    classify_primitive,
    d_independent,
    decompose,
    free_amalgam,
    is_primitive,
    sharp_step,
)
from .census import (
    canonical_key,
    enumerate_planes,
    enumerate_strong_extensions,
    exact_census,
)
from .embedding import are_isomorphic, embeddings, find_embedding
from .errors import (
    BudgetExceeded,
    ExchangeViolation,
    InvalidPlaneError,
    NotPrimitive,
    NotStrong,
    NotWedgeSubgeometry,
    ParseError,
    PlaneError,
    PreconditionError,
)
from .generic import (
    WITNESSES,
    AuditReport,
    ExtensionChain,
    StepRecord,
    WitnessBundle,
    build_generic,
    check_genericity,
    figure2_plane,
    iterated_amalgam,
    morley_chain,
    non_desarguesian_plane,
    witness_non_desarguesian,
    witness_not_one_based,
    witness_weak_ei,
)
from .plane import (
    Plane,
    closure,
    flats,
    is_induced_subplane,
    is_subgeometry,
    is_wedge_subgeometry,
    line_through,
    lines_based_in,
    make_plane,
    rank,
    rank2_flats,
    restrict,
    validate,
)
from .planefile import parse_plane, read_plane, serialize_plane
from .predim import (
    PredimReport,
    alpha,
    d_rel,
    d_value,
    delta,
    delta_rel,
    icl,
    in_K0,
    is_k_strong,
    is_strong,
    predim_report,
)

__version__ = "0.1.0"

__all__ = [
    "AmalgamResult",
    "AuditReport",
    "BudgetExceeded",
    "Decomposition",
    "ExchangeViolation",
    "ExtensionChain",
    "FreeAmalgam",
    "InvalidPlaneError",
    "NotPrimitive",
    "NotStrong",
    "NotWedgeSubgeometry",
    "ParseError",
    "Plane",
    "PlaneError",
    "PreconditionError",
    "PredimReport",
    "PrimitiveCase",
    "StepRecord",
    "StrongEmbedding",
    "WitnessBundle",
    "alpha",
    "are_isomorphic",
    "build_generic",
    "canonical_amalgam",
    "canonical_key",
    "check_genericity",
    "classify_primitive",
    "closure",
    "d_independent",
    "d_rel",
    "d_value",
    "decompose",
    "delta",
    "delta_rel",
    "embeddings",
    "enumerate_planes",
    "enumerate_strong_extensions",
    "exact_census",
    "figure2_plane",
    "find_embedding",
    "flats",
    "free_amalgam",
    "icl",
    "in_K0",
    "is_induced_subplane",
    "is_k_strong",
    "is_primitive",
    "is_strong",
    "is_subgeometry",
    "is_wedge_subgeometry",
    "iterated_amalgam",
    "line_through",
    "lines_based_in",
    "make_plane",
    "morley_chain",
    "non_desarguesian_plane",
    "parse_plane",
    "predim_report",
    "rank",
    "rank2_flats",
    "read_plane",
    "restrict",
    "serialize_plane",
    "sharp_step",
    "validate",
    "WITNESSES",
    "witness_non_desarguesian",
    "witness_not_one_based",
    "witness_weak_ei",
]
