"""Independent reference values: brute force and sympy series, sharing no code with opcalc."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

import sympy
from sympy import Rational, symbols

t = symbols("t")

# exponential generating functions of the builtin operads, dim a(n) = n! [xⁿ] f
EGF = {
    "com": sympy.exp(t) - 1,
    "assoc": t / (1 - t),
    "lie": -sympy.log(1 - t),
    "poisson(2)": t / (1 - t),
}


def egf_dims(f, N):
    s = sympy.series(f, t, 0, N + 1).removeO()
    return [int(s.coeff(t, n) * factorial(n)) for n in range(N + 1)]


def composite_dims(outer: str, inner: str, N: int):
    return egf_dims(EGF[outer].subs(t, EGF[inner]), N)


def bell(n: int) -> int:
    return int(sympy.bell(n))


def set_partition_count(n: int) -> int:
    """Brute-force count of set partitions of {0..n−1} via restricted growth strings."""
    if n == 0:
        return 1
    count = 0
    for rgs in itertools.product(range(n), repeat=n):
        if rgs[0] == 0 and all(rgs[i] <= max(rgs[:i]) + 1 for i in range(1, n)):
            count += 1
    return count


def witt(n: int, k: int) -> int:
    """(1/n) Σ_{d|n} μ(d) k^{n/d}."""
    return sum(int(sympy.mobius(d)) * k ** (n // d) for d in sympy.divisors(n)) // n


def lyndon_count(n: int, k: int) -> int:
    """Brute-force count of Lyndon words of length n on k letters."""
    c = 0
    for w in itertools.product(range(k), repeat=n):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            c += 1
    return c


def series_coeffs(expr, D: int):
    s = sympy.series(expr, t, 0, D + 1).removeO()
    return [int(s.coeff(t, d)) for d in range(D + 1)]


def heisenberg_series(D: int):
    return series_coeffs(1 / ((1 - t) ** 2 * (1 - t ** 2)), D)


def sym_dims(k: int, D: int):
    """dim Sym^d(K^k) for d = 1..D."""
    return {d: comb(d + k - 1, k - 1) for d in range(1, D + 1)}


def omega_rank(k: int, q: int, d: int) -> int:
    """Ω^q of K[x_1..x_k], x_i and dx_i in degree 1, internal degree d."""
    if q > k or d < q:
        return 0
    return comb(k, q) * comb(d - q + k - 1, k - 1)


def multilinear_lyndon_count(n: int) -> int:
    """Brute-force count of Lyndon words using each of n distinct letters once."""
    return sum(1 for w in itertools.permutations(range(n)) if all(w < w[i:] + w[:i] for i in range(1, n)))


def rank(rows) -> int:
    return sympy.Matrix([[Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in r]
                         for r in rows]).rank() if rows and rows[0] else 0


def koszul_sign_bruteforce(order, degrees) -> int:
    """Sign of the permutation restricted to odd items, by counting inversions pairwise."""
    sign = 1
    n = len(order)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = order[i], order[j]
            if a > b and degrees[a] % 2 and degrees[b] % 2:
                sign = -sign
    return sign


def graded_sym_dims(degrees, D: int, sign_rule: str = "koszul"):
    """Free graded-commutative algebra on generators of the given degrees (reduced), by series."""
    expr = sympy.Integer(1)
    for d in degrees:
        odd = d % 2 and sign_rule == "koszul"
        expr *= (1 + t ** d) if odd else 1 / (1 - t ** d)
    c = series_coeffs(expr, D)
    return {d: c[d] for d in range(1, D + 1) if c[d]}
