"""Certificates for non-relative-hyperbolicity of Aut and Out of right-angled Artin groups."""

from .classifier import TheoremContradiction, Verdict, classify, classify_aut, classify_out
from .graph import Graph
from .kernels import BACKEND
from .words import Word

__all__ = ["BACKEND", "Graph", "TheoremContradiction", "Verdict", "Word", "classify", "classify_aut", "classify_out"]
__version__ = "0.1.0"
