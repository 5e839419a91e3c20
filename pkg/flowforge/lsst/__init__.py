"""Low-stretch spanning trees via hierarchical petal decomposition."""

from flowforge.lsst.hierarchy import hierarchical_petal_decomposition, lsst, max_depth
from flowforge.lsst.petal import (
    ConeDigraph,
    Petal,
    PetalDecomposition,
    cone_digraph,
    create_petal,
    petal_decomposition,
)

__all__ = [
    "ConeDigraph",
    "Petal",
    "PetalDecomposition",
    "cone_digraph",
    "create_petal",
    "hierarchical_petal_decomposition",
    "lsst",
    "max_depth",
    "petal_decomposition",
]
