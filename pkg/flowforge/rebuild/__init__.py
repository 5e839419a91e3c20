"""The rebuilding game: adversary, deterministic player and cost ledger."""

from flowforge.rebuild.game import (
    RebuildState,
    RoundRecord,
    Transcript,
    derive_config,
    fix,
    forcing_state,
    play,
    sample_weights,
    weights_from_vectors,
)

__all__ = [
    "RebuildState",
    "RoundRecord",
    "Transcript",
    "derive_config",
    "fix",
    "forcing_state",
    "play",
    "sample_weights",
    "weights_from_vectors",
]
