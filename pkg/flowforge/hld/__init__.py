"""Heavy-light decomposition of rooted trees."""

from flowforge.hld.decomposition import (
    ConditionReport,
    HeavyChains,
    chain_intersection_stats,
    chain_intersections_naive,
    heavy_children,
    heavy_light_decomposition,
    subtree_sizes,
    validate_conditions,
)

__all__ = [
    "ConditionReport",
    "HeavyChains",
    "chain_intersection_stats",
    "chain_intersections_naive",
    "heavy_children",
    "heavy_light_decomposition",
    "subtree_sizes",
    "validate_conditions",
]
