"""Min-cost-flow instance and interior-flow schemas."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from flowforge.core.exceptions import BarrierDomainError
from flowforge.graphs.types import WeightedGraph

CONSERVATION_TOL = 1e-9


class FlowProblem(BaseModel):
    """Min-cost-flow instance on directed edges ``tail -> head``.

    Demands follow ``(B^T f)_v = inflow(v) - outflow(v) = dem[v]``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    graph: WeightedGraph
    c: list[int]
    u_lo: list[int]
    u_hi: list[int]
    dem: list[int]
    U: int = Field(..., ge=1)
    C: int = Field(..., ge=0)

    @field_validator("dem")
    @classmethod
    def validate_demands(cls, v: list[int]) -> list[int]:
        """Demands must sum to zero."""
        if sum(v) != 0:
            raise ValueError(f"Demands sum to {sum(v)}, expected 0")
        return v

    @model_validator(mode="after")
    def validate_shapes(self) -> FlowProblem:
        """Per-edge and per-vertex arrays must match the graph and the bounds."""
        m, n = self.graph.m, self.graph.n
        if not len(self.c) == len(self.u_lo) == len(self.u_hi) == m:
            raise ValueError(f"Per-edge data must have length m={m}")
        if len(self.dem) != n:
            raise ValueError(f"Demands must have length n={n}")
        for e in range(m):
            if not self.u_lo[e] < self.u_hi[e]:
                raise ValueError(f"Edge {e}: need u_lo < u_hi, got {self.u_lo[e]}, {self.u_hi[e]}")
            if max(abs(self.u_lo[e]), abs(self.u_hi[e])) > self.U:
                raise ValueError(f"Edge {e}: capacity bound exceeds U={self.U}")
            if abs(self.c[e]) > self.C:
                raise ValueError(f"Edge {e}: cost exceeds C={self.C}")
        return self

    @classmethod
    def build(
        cls,
        n: int,
        arcs: Sequence[tuple[int, int]],
        c: Sequence[int],
        u_lo: Sequence[int],
        u_hi: Sequence[int],
        dem: Sequence[int],
        **kwargs: Any,
    ) -> FlowProblem:
        """Create an instance, deriving ``U`` and ``C`` from the data when omitted."""
        graph = WeightedGraph(n, ((u, v, 1.0) for u, v in arcs))
        U = kwargs.pop("U", max([1, *map(abs, u_lo), *map(abs, u_hi)]))
        C = kwargs.pop("C", max([0, *map(abs, c)]))
        return cls(
            graph=graph,
            c=[int(x) for x in c],
            u_lo=[int(x) for x in u_lo],
            u_hi=[int(x) for x in u_hi],
            dem=[int(x) for x in dem],
            U=U,
            C=C,
        )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def tails(self) -> np.ndarray:
        return np.array([e.u for e in self.graph.edges], dtype=np.int64)

    @property
    def heads(self) -> np.ndarray:
        return np.array([e.v for e in self.graph.edges], dtype=np.int64)

    def costs(self) -> np.ndarray:
        return np.asarray(self.c, dtype=float)

    def lower(self) -> np.ndarray:
        return np.asarray(self.u_lo, dtype=float)

    def upper(self) -> np.ndarray:
        return np.asarray(self.u_hi, dtype=float)

    def excess(self, f: Sequence[float] | np.ndarray) -> np.ndarray:
        """``B^T f``: inflow minus outflow at every vertex."""
        flow = np.asarray(f, dtype=float)
        out = np.zeros(self.n)
        np.add.at(out, self.heads, flow)
        np.subtract.at(out, self.tails, flow)
        return out

    def cost_of(self, f: Sequence[float] | np.ndarray) -> float:
        return float(np.dot(self.costs(), np.asarray(f, dtype=float)))


@dataclass(frozen=True)
class InteriorFlow:
    """Flow strictly inside the capacity bounds that meets every demand."""

    f: np.ndarray

    @classmethod
    def of(
        cls, p: FlowProblem, f: Sequence[float] | np.ndarray, tol: float = CONSERVATION_TOL
    ) -> InteriorFlow:
        """Validate a flow against an instance.

        Raises:
            BarrierDomainError: If the flow is not strictly interior or does not
                conserve the demands
        """
        flow = np.array(f, dtype=float)
        if flow.shape != (p.m,):
            raise BarrierDomainError(f"Flow has shape {flow.shape}, expected ({p.m},)", "ipm")
        if not is_strictly_interior(p, flow):
            raise BarrierDomainError("Flow is not strictly inside the capacity bounds", "ipm")
        residual = np.abs(p.excess(flow) - np.asarray(p.dem, dtype=float))
        if residual.size and residual.max() > tol * max(1.0, float(p.U)):
            raise BarrierDomainError(
                f"Flow violates conservation by {residual.max():.3g}", "ipm"
            )
        return cls(flow)

    def __len__(self) -> int:
        return int(self.f.shape[0])


def is_strictly_interior(p: FlowProblem, f: np.ndarray) -> bool:
    return bool(np.all(f > p.lower()) and np.all(f < p.upper()))
