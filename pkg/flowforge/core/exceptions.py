"""FlowForge exception hierarchy."""

from __future__ import annotations


class FlowForgeError(Exception):
    """Base exception for all library errors."""

    def __init__(self, message: str, component: str | None = None) -> None:
        self.message = message
        self.component = component
        super().__init__(self.message)


class InvalidInputError(FlowForgeError):
    """Raised when an operation precondition is violated."""


class GraphError(FlowForgeError):
    """Raised for disconnected, unreachable or non-spanning structures."""


class GenerationError(FlowForgeError):
    """Raised when a random generator cannot produce a valid instance."""


class DecompositionError(FlowForgeError):
    """Raised when a petal decomposition sanity check fails."""


class ForestError(FlowForgeError):
    """Raised on invalid dynamic forest operations."""


class BarrierDomainError(FlowForgeError):
    """Raised when a flow leaves the barrier domain or the cost gap is nonpositive."""


class StallError(FlowForgeError):
    """Raised when no improving step exists along a search direction."""


class InfeasibleError(FlowForgeError):
    """Raised when a flow instance has no feasible solution."""


class InstanceTooLargeError(FlowForgeError):
    """Raised when an exhaustive oracle is given an instance beyond its limits."""


class StrategyError(FlowForgeError):
    """Raised when the rebuilding-game player fails to clear a forcing condition."""


class RootNotBracketedError(FlowForgeError):
    """Raised when a bisection bracket shows no sign change."""


class ScriptDivergenceError(FlowForgeError):
    """Raised when a replayed script disagrees with the reference forest."""

    def __init__(
        self,
        message: str,
        component: str | None = None,
        step: int | None = None,
        op: str | None = None,
    ) -> None:
        super().__init__(message, component)
        self.step = step
        self.op = op


class FormatError(FlowForgeError):
    """Raised when a text file cannot be parsed."""

    def __init__(
        self,
        message: str,
        component: str | None = None,
        line_number: int | None = None,
        raw_line: str | None = None,
    ) -> None:
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message, component)
        self.line_number = line_number
        self.raw_line = raw_line
