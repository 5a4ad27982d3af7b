"""Operads: structure maps, law checks, builtins, free and quadratic operads."""

from .base import (ArityOverflow, Operad, OperadMorphism, TableOperad, check_operad_laws, multilinear,
                   signature_str)
from .builtins import ExpressionOperad, builtin_operad, default_sign_rule, parse_builtin_name
from .free import (FreeOperad, QuotientOperad, RelationsNotStable, expression_morphism, quadratic_operad,
                   quadratic_preset, quotient_comparison)
from .primgen import is_primitively_generated

__all__ = [
    "ArityOverflow", "Operad", "OperadMorphism", "TableOperad", "check_operad_laws", "multilinear",
    "signature_str", "ExpressionOperad", "builtin_operad", "default_sign_rule", "parse_builtin_name",
    "FreeOperad", "QuotientOperad", "RelationsNotStable", "expression_morphism", "quadratic_operad",
    "quadratic_preset", "quotient_comparison", "is_primitively_generated",
]
