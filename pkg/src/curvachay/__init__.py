"""Curvature of Cayley graphs of right-angled Artin-Coxeter hybrids (RAACHs).

Exact Ollivier-Ricci (Lin-Lu-Yau) and Bakry-Emery curvature on balls and
finite Cayley graphs, closed forms for RAACHs, and the harnesses that
compare the two.
"""

__version__ = "0.1.0"

from .bakry_emery import CurvatureResult, bakry_emery, curvature_matrix
from .cosets import cayley_from_cosets, quotient_map, todd_coxeter
from .graph import LocalGraph, find_isomorphism, graph_from_edges
from .laplacian import NON_NORMALIZED, NORMALIZED, WEIGHTED, random_walk
from .ollivier import kappa_lly_laplacian, kappa_lly_transport, kappa_p
from .presentation import (
    INF,
    AssociatedPair,
    DefiningGraph,
    Presentation,
    associated_pair,
    parse_presentation,
    parse_raach_body,
)
from .raach import RaachGroup, ball
from .theorems import monotonicity_check, thm_be_raach, thm_or_raach
from .transport import wasserstein_w1

__all__ = [
    "INF",
    "AssociatedPair",
    "CurvatureResult",
    "DefiningGraph",
    "LocalGraph",
    "NON_NORMALIZED",
    "NORMALIZED",
    "Presentation",
    "RaachGroup",
    "WEIGHTED",
    "associated_pair",
    "ball",
    "bakry_emery",
    "cayley_from_cosets",
    "curvature_matrix",
    "find_isomorphism",
    "graph_from_edges",
    "kappa_lly_laplacian",
    "kappa_lly_transport",
    "kappa_p",
    "monotonicity_check",
    "parse_presentation",
    "parse_raach_body",
    "quotient_map",
    "random_walk",
    "thm_be_raach",
    "thm_or_raach",
    "todd_coxeter",
    "wasserstein_w1",
]
