"""Fast online k-server solver for trees.

The package provides a query engine built on heavy-path decomposition,
constant-time lowest-common-ancestor lookups and per-path color segment
trees, together with independent reference implementations (a naive
phase-by-phase simulation and a small-instance offline optimum) used to
cross-verify every answer.
"""

from .tree_core import (
    Tree,
    TreeError,
    NodeOutOfRange,
    SelfLoop,
    DuplicateEdge,
    EdgeCountMismatch,
    NotConnected,
    build_tree,
    compute_distances,
    dist,
)
from .lca import LcaIndex, lca_preprocess, lca
from .hld import HeavyPath, HldDecomposition, build_hld, path_head
from .color_segtree import (
    ColorSegTree,
    SegContext,
    IndexOutOfRange,
    ColorOutOfRange,
)
from .engine import (
    Engine,
    QueryOutcome,
    ServerMove,
    NoColoredNode,
    StepsExceedPath,
    preprocess,
)
from .oracle import (
    InstanceTooLarge,
    naive_query,
    offline_opt,
    offline_opt_exhaustive,
    array_color_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "Tree",
    "TreeError",
    "NodeOutOfRange",
    "SelfLoop",
    "DuplicateEdge",
    "EdgeCountMismatch",
    "NotConnected",
    "build_tree",
    "compute_distances",
    "dist",
    "LcaIndex",
    "lca_preprocess",
    "lca",
    "HeavyPath",
    "HldDecomposition",
    "build_hld",
    "path_head",
    "ColorSegTree",
    "SegContext",
    "IndexOutOfRange",
    "ColorOutOfRange",
    "Engine",
    "QueryOutcome",
    "ServerMove",
    "NoColoredNode",
    "StepsExceedPath",
    "preprocess",
    "InstanceTooLarge",
    "naive_query",
    "offline_opt",
    "offline_opt_exhaustive",
    "array_color_oracle",
]
