"""Exact ground-state degeneracy of abelian higher lattice gauge theories.

The geometric input is a free chain complex ``C`` built from cells; the gauge
input is a chain complex ``G`` of finite abelian groups.  The degeneracy is the
order of ``H^0`` of the hom complex ``hom(C, G)``, cross-checked against a
product over homology degrees and against brute force on the full Hilbert space.
"""

from .abelian import AbelianGroup, GroupElement, GroupHomomorphism, render_group
from .complex import ChainComplex, build_gauge, build_space, homology, parse_space
from .homcx import Cochain, DualCochain, HomComplex, cohomology
from .invariants import BrownMap, GsdReport, SplittingError, build_splitting, gsd

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "BrownMap",
    "ChainComplex",
    "Cochain",
    "DualCochain",
    "GroupElement",
    "GroupHomomorphism",
    "GsdReport",
    "HomComplex",
    "SplittingError",
    "build_gauge",
    "build_space",
    "build_splitting",
    "cohomology",
    "gsd",
    "homology",
    "parse_space",
    "render_group",
]
