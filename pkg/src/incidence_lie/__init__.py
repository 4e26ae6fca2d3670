"""Nonlinear Lie n-derivations of finite incidence algebras."""
from .algebra import FiElement, basis, bracket, convolve, diagonal, identity, p_n
from .decompose import DecompositionReport, decompose
from .maps import (
    AdditiveInduced,
    BlackBoxMap,
    CentralTrace,
    Inner,
    MapSpec,
    ProperPart,
    Transitive,
    Witness,
    make_witness,
)
from .preorder import EdgeClassification, Preorder, edge_classes
from .properness import emit_witness, properize, properness_criterion
from .ring import INTEGER, INTPOLY, RATIONAL, AdditiveDerivation, ModularRing, ring_from_name
from .verify import (
    ProbeBudget,
    Verdict,
    check_central_annihilating,
    check_derivation,
    check_lie_n_derivation,
)

__all__ = [
    "FiElement", "basis", "bracket", "convolve", "diagonal", "identity", "p_n",
    "DecompositionReport", "decompose",
    "AdditiveInduced", "BlackBoxMap", "CentralTrace", "Inner", "MapSpec", "ProperPart",
    "Transitive", "Witness", "make_witness",
    "EdgeClassification", "Preorder", "edge_classes",
    "emit_witness", "properize", "properness_criterion",
    "INTEGER", "INTPOLY", "RATIONAL", "AdditiveDerivation", "ModularRing", "ring_from_name",
    "ProbeBudget", "Verdict", "check_central_annihilating", "check_derivation",
    "check_lie_n_derivation",
]
