"""The primitively-generated test: products in free algebras hit exactly the high-arity part."""

from __future__ import annotations

from typing import Dict, Optional, Sequence, Tuple

from ..exactlin import Echelon, GradedVectorSpace
from .base import Operad


def is_primitively_generated(a: Operad, test_dims: Sequence[int] = (1, 2), N: Optional[int] = None,
                             D: Optional[int] = None) -> Tuple[bool, Optional[Dict]]:
    """For X = K^d in degree 1, check im θ_n = ⊕_{i≥n} a(i) ⊗_{Σ_i} X^{⊗i} for 2 ≤ n ≤ N.

    Returns (True, None) or (False, {"n", "dim", "degree"}) for the first failure.
    """
    from ..algebras.algebra import FreeAlgebra
    N = a.max_arity if N is None else min(N, a.max_arity)
    D = max(N, a.max_arity) if D is None else D
    for d in test_dims:
        F = FreeAlgebra(a, GradedVectorSpace({1: d}), D)
        degs = F.degs
        for n in range(2, N + 1):
            _, th = F.theta_map(n)
            image: Dict[int, Echelon] = {}
            for col in th.columns:
                if col:
                    deg = degs[next(iter(col))]
                    image.setdefault(deg, Echelon()).add(col)
            high: Dict[int, int] = {}
            for i in range(F.dim):
                if F.space.arity(i) >= n:
                    high[degs[i]] = high.get(degs[i], 0) + 1
            for deg in sorted(set(high) | set(image)):
                got = len(image[deg]) if deg in image else 0
                if got != high.get(deg, 0):
                    return False, {"n": n, "dim": d, "degree": deg}
    return True, None
