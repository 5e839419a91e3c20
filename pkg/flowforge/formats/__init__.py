"""Text file formats for graphs, trees, flow instances and forest scripts."""

from flowforge.formats.common import format_real, read_text, write_text
from flowforge.formats.dimacs import format_min_cost, parse_min_cost
from flowforge.formats.graph import format_graph, format_tree, parse_graph, parse_tree

__all__ = [
    "format_graph",
    "format_min_cost",
    "format_real",
    "format_tree",
    "parse_graph",
    "parse_min_cost",
    "parse_tree",
    "read_text",
    "write_text",
]
