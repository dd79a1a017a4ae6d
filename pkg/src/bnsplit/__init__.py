"""Khovanov homology and Bar-Natan homology over F2[H] from PD codes.

Also computes both basepoint-reduced Bar-Natan theories, and checks on
explicit bases that the Bar-Natan complex splits as their direct sum.
"""

from .complex import BNComplex, chain_str, grading
from .cube import Cube, full_cube
from .diagram import LinkDiagram, PDError, parse_pd, serialize_pd
from .gf2 import BACKEND
from .homology import GradedModule, compute, homology_bn, khovanov_homology

__all__ = [
    "BACKEND",
    "BNComplex",
    "Cube",
    "GradedModule",
    "LinkDiagram",
    "PDError",
    "chain_str",
    "compute",
    "full_cube",
    "grading",
    "homology_bn",
    "khovanov_homology",
    "parse_pd",
    "serialize_pd",
]

__version__ = "0.1.0"
