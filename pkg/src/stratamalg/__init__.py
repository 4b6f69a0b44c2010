"""Skeletons of stratified spaces: strata posets, embeddings and amalgamated sums."""

from .amalgamation import (
    PushoutResult,
    bouquet,
    fraisse_check,
    graph_join_check,
    joint_embedding,
    pushout,
    verify_pushout_universal,
)
from .decomposition import AmalgamationPlan, decompose, replay
from .graphs import hasse_graph, is_basic, is_irreducible, longest_path
from .limits import Tower, classify_limit, colimit, cone_tower, sphere_tower
from .morphisms import (
    Declarations,
    MorphClass,
    StrataMorphism,
    classify,
    find_isomorphism,
    is_closed_embedding,
)
from .pseudomanifold import (
    NonClosedGluing,
    PseudoMorphism,
    PseudoSkeleton,
    amalgamate_pseudo,
    cone_pseudo,
    validate_pseudo,
)
from .skeleton import INF, Skeleton, StratumLabel, cone, length, product, validate_skeleton

__version__ = "0.1.0"

__all__ = [
    "AmalgamationPlan",
    "Declarations",
    "INF",
    "MorphClass",
    "NonClosedGluing",
    "PseudoMorphism",
    "PseudoSkeleton",
    "PushoutResult",
    "Skeleton",
    "StrataMorphism",
    "StratumLabel",
    "Tower",
    "amalgamate_pseudo",
    "bouquet",
    "classify",
    "classify_limit",
    "colimit",
    "cone",
    "cone_pseudo",
    "cone_tower",
    "decompose",
    "find_isomorphism",
    "fraisse_check",
    "graph_join_check",
    "hasse_graph",
    "is_basic",
    "is_closed_embedding",
    "is_irreducible",
    "joint_embedding",
    "length",
    "longest_path",
    "product",
    "pushout",
    "replay",
    "sphere_tower",
    "validate_pseudo",
    "validate_skeleton",
    "verify_pushout_universal",
]
