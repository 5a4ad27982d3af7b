"""Algebras over operads, bar resolutions, augmentation towers and classical splittings."""

from .algebra import (AlgebraOverOperad, FreeAlgebra, QuotientAlgebra, binary_algebra, check_algebra_laws,
                      quotient_algebra)
from .bar import BarResolution, MonadTower, bar_resolution, chain_homology
from .classical import (CommutativeAlgebraData, LieAlgebraData,
                        exterior_polynomial_data, heisenberg, hochschild_homology, leray_split, pbw_check,
                        polynomial_data)
from .tower import (AugmentationTower, NotPrimitivelyGenerated, SectionError, SplitReport, find_section,
                    ideal_powers, indecomposables, layer_compare, split_algebra, tower)

__all__ = [
    "AlgebraOverOperad", "FreeAlgebra", "QuotientAlgebra", "binary_algebra", "check_algebra_laws",
    "quotient_algebra", "BarResolution", "MonadTower", "bar_resolution", "chain_homology",
    "CommutativeAlgebraData", "LieAlgebraData", "exterior_polynomial_data", "heisenberg",
    "hochschild_homology", "leray_split", "pbw_check", "polynomial_data", "AugmentationTower",
    "NotPrimitivelyGenerated", "SectionError", "SplitReport", "find_section", "ideal_powers",
    "indecomposables", "layer_compare", "split_algebra", "tower",
]
