"""Inversive distance circle packings on closed triangulated surfaces.

Thin wrapper over the compiled core: weighted Delaunay flip surgery via the
generalized Ptolemy formula and discrete Ricci flow (Euler and Newton) to any
target curvature satisfying Gauss-Bonnet.
"""

from ._idpack import *  # noqa: F401,F403
from ._idpack import fixtures  # noqa: F401

__version__ = "0.1.0"
