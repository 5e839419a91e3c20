"""FlowForge: desk-scale validation of almost-linear min-cost-flow components."""

__version__ = "0.1.0"
