"""Markov triples, orbifold adjunction and almost toric pictures for embeddings of rational homology balls."""
from .markov import MarkovTriple, enumerate_triples, is_markov_triple, markov_partner
from .diophantine import RosenbergerEquation, has_positive_solution
from .germs import CycCoefficient, GermBranch, OrbifoldIncidence, branch_intersection, local_adjunction_K
from .adjunction import CurveCandidate, OrbifoldSurface, adjunction_residual, virtual_dimension
from .constraints import constraint_filter
from .classify import classify_one, classify_pair, classify_triple
from .topology import PinwheelType, fibonacci_branch, reeb_stabiliser
from .atf import transfer_cut, wahl_cone, wps_triangle
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "MarkovTriple",
    "enumerate_triples",
    "is_markov_triple",
    "markov_partner",
    "RosenbergerEquation",
    "has_positive_solution",
    "CycCoefficient",
    "GermBranch",
    "OrbifoldIncidence",
    "branch_intersection",
    "local_adjunction_K",
    "CurveCandidate",
    "OrbifoldSurface",
    "adjunction_residual",
    "virtual_dimension",
    "constraint_filter",
    "classify_one",
    "classify_pair",
    "classify_triple",
    "PinwheelType",
    "fibonacci_branch",
    "reeb_stabiliser",
    "transfer_cut",
    "wahl_cone",
    "wps_triangle",
    "render_svg",
]
