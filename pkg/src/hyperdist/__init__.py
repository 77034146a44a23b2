"""Distance spectral radius of power hypertrees with prescribed pendant paths."""

from .constructions import (
    Labeling,
    TreeSkeleton,
    attach_pendant_paths,
    construct_D,
    construct_S,
    loose_path,
    move_edges,
    power_of_tree,
)
from .core import DisconnectedError, Hypergraph, HypergraphError, from_edge_list, from_json, is_hypertree
from .enumeration import ClassDescriptor, canonical_code, enumerate_class, enumerate_free_trees, random_tree
from .spectral import SpectralResult, distance_matrix, spectral_radius
from .structure import count_pendant_paths, is_power_hypertree

__version__ = "0.1.0"

__all__ = [
    "ClassDescriptor",
    "DisconnectedError",
    "Hypergraph",
    "HypergraphError",
    "Labeling",
    "SpectralResult",
    "TreeSkeleton",
    "attach_pendant_paths",
    "canonical_code",
    "construct_D",
    "construct_S",
    "count_pendant_paths",
    "distance_matrix",
    "enumerate_class",
    "enumerate_free_trees",
    "from_edge_list",
    "from_json",
    "is_hypertree",
    "is_power_hypertree",
    "loose_path",
    "move_edges",
    "power_of_tree",
    "random_tree",
    "spectral_radius",
]
