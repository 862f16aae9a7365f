"""Quaplectic group computations: algebra, groups, representations, field equations."""

__version__ = "0.1.0"
