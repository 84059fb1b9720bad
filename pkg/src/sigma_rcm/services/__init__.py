"""Service layer: paths, skeletons, grounding, separation and abstraction."""

from sigma_rcm.services.agg import (
    AggMode,
    AggNode,
    SigmaAGG,
    augment,
    build_agg,
    find_intersection_witness,
    intersectable,
    relational_separated,
)
from sigma_rcm.services.ground_graph import AttributeNode, GroundGraph, ground, is_cyclic
from sigma_rcm.services.loader import load_model, load_skeleton
from sigma_rcm.services.paths import (
    detect_model_cycles,
    enumerate_paths,
    extend,
    is_valid_path,
    validate_model,
)
from sigma_rcm.services.separation import (
    SeparationEngine,
    SeparationMode,
    SeparationQuery,
    d_separated,
    sigma_separated,
)
from sigma_rcm.services.skeletons import (
    enumerate_skeletons,
    random_skeleton,
    terminal_set,
    validate_skeleton,
)


__all__ = [
    "AggMode",
    "AggNode",
    "AttributeNode",
    "GroundGraph",
    "SeparationEngine",
    "SeparationMode",
    "SeparationQuery",
    "SigmaAGG",
    "augment",
    "build_agg",
    "d_separated",
    "detect_model_cycles",
    "enumerate_paths",
    "enumerate_skeletons",
    "extend",
    "find_intersection_witness",
    "ground",
    "intersectable",
    "is_cyclic",
    "is_valid_path",
    "load_model",
    "load_skeleton",
    "random_skeleton",
    "relational_separated",
    "sigma_separated",
    "terminal_set",
    "validate_model",
    "validate_skeleton",
]
