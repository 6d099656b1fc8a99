"""Minimum degrees of minimal Ramsey graphs, executable.

Seeded random-graph sampling and neighbourhood analysis, exact arrowing
decisions with minimality certificates, coloured gadget-graph constructions
and verification, the forest host-graph construction with its pigeonhole
extractor, and closed-form bounds on the Ramsey-simplicity threshold.
"""

from ramsimple._kernels import backend as kernel_backend
from ramsimple.graph import ColouredGraph, Graph, sample_gnp

__all__ = ["Graph", "ColouredGraph", "sample_gnp", "kernel_backend"]

__version__ = "0.1.0"
