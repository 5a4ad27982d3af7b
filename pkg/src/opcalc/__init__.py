"""Exact operad, triple and functor-calculus computations over the rationals."""

from .exactlin import GradedLinearMap, GradedVectorSpace
from .symseq import SymmetricSequence, compose, evaluate
from .operads import Operad, builtin_operad, check_operad_laws
from .triples import AnalyticTriple, associated_triple, check_triple_laws, induced_operad

__version__ = "0.1.0"

__all__ = [
    "GradedLinearMap", "GradedVectorSpace", "SymmetricSequence", "compose", "evaluate", "Operad",
    "builtin_operad", "check_operad_laws", "AnalyticTriple", "associated_triple", "check_triple_laws",
    "induced_operad",
]
