"""Dynamic trees with path aggregates, flow updates and DETECT."""

from flowforge.linkcut.base import DynamicForest, EdgeHandle, PathSums
from flowforge.linkcut.forest import DynTreeForest
from flowforge.linkcut.naive import NaiveForest
from flowforge.linkcut.script import (
    ReplayReport,
    Script,
    ScriptOp,
    format_script,
    fuzz_scripts,
    generate_script,
    parse_script,
    replay_script,
)

__all__ = [
    "DynTreeForest",
    "DynamicForest",
    "EdgeHandle",
    "NaiveForest",
    "PathSums",
    "ReplayReport",
    "Script",
    "ScriptOp",
    "format_script",
    "fuzz_scripts",
    "generate_script",
    "parse_script",
    "replay_script",
]
