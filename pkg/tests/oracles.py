"""Oracles shared by several test modules, independent of the package."""
from functools import lru_cache

import sympy


@lru_cache(maxsize=None)
def sympy_character(even, odd, max_weight2):
    """Coefficients of prod (1-q^w)^-1 (1+q^w) over the generator towers, as truncated sympy polynomials."""
    x = sympy.symbols("x")  # x = q^(1/2)
    f = sympy.Poly(1, x)
    factors = []
    for w in even:
        for j in range(int(2 * w), max_weight2 + 1, 2):
            factors.append(sympy.Poly(sum(x ** (j * m) for m in range(max_weight2 // j + 1)), x))
    for w in odd:
        for j in range(int(2 * w), max_weight2 + 1, 2):
            factors.append(sympy.Poly(1 + x ** j, x))
    for g in factors:
        f = sympy.Poly(sum(c * x ** e for (e,), c in (f * g).terms() if e <= max_weight2), x)
    return [int(f.coeff_monomial(x ** i)) for i in range(max_weight2 + 1)]
