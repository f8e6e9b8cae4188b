"""Graph C*-algebras B(G): classification, set families, and matrix models."""

from . import gf2, graphcore, reps, setfam

__version__ = "0.1.0"

__all__ = ["gf2", "graphcore", "reps", "setfam", "__version__"]
