"""Randomized checks of the vertex-algebra axioms on engine States.

Each ``*_defect`` function returns the offending State (zero when the
identity holds) so that callers can render a witness.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

from .core import State, VertexAlgebra, gbinom
from .screening import weight_basis

__all__ = [
    "random_state", "skew_symmetry_defect", "jacobi_defect", "sesquilinearity_defects",
    "grading_defect", "idempotence_defect", "confluence_defect", "quasi_associativity_defect",
    "random_word",
]


def random_state(alg: VertexAlgebra, rng: random.Random, max_weight2: int = 4,
                 max_terms: int = 3, parity: int | None = None) -> State:
    """Small nonzero random State of definite parity built from PBW monomials."""
    pool = [m for w in range(1, max_weight2 + 1) for m in weight_basis(alg, w)]
    if parity is None:
        parity = rng.randrange(2)
    pool = [m for m in pool if alg.mono_parity(m) == parity] or pool
    t = alg.context.t
    while True:
        terms: dict = {}
        for _ in range(rng.randint(1, max_terms)):
            mono = rng.choice(pool)
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
            coef = alg.scalar(c) * (t if rng.random() < 0.25 else 1)
            terms[mono] = terms.get(mono, 0) + coef
        terms = {m: c for m, c in terms.items() if c}
        if terms:
            return State(alg, terms)


def random_word(alg: VertexAlgebra, rng: random.Random, length: int = 3, max_d: int = 1):
    """Unsorted letters ``(name, d)`` for a right-nested normally ordered product."""
    return [(rng.choice(alg.gens).name, rng.randint(0, max_d)) for _ in range(length)]


def _sign(a: State, b: State) -> int:
    return -1 if (a.parity and b.parity) else 1


def skew_symmetry_defect(a: State, b: State) -> State:
    """``b_(q) a + p sum_{n>=q} (-1)^n D^(n-q) (a_(n) b)`` summed over q."""
    alg = a.algebra
    ab = a.bracket(b)
    ba = b.bracket(a)
    p = _sign(a, b)
    top = max([ab.degree(), ba.degree(), 0])
    total = alg.zero()
    for q in range(0, top + 1):
        rhs = alg.zero()
        for n in range(q, top + 1):
            X = ab[n]
            if X:
                r = n - q
                rhs = rhs + X.derivative(r) * Fraction((-1) ** n, factorial(r))
        total = total + ba[q] + rhs * p
    return total


def jacobi_defect(a: State, b: State, c: State, m: int, n: int) -> State:
    """``a_(m) b_(n) c - p b_(n) a_(m) c - sum_j C(m, j) (a_(j) b)_(m+n-j) c``."""
    lhs = a.nth(b.nth(c, n), m) - b.nth(a.nth(c, m), n) * _sign(a, b)
    rhs = a.algebra.zero()
    for j in range(0, m + 1):
        ab = a.nth(b, j)
        if ab:
            rhs = rhs + ab.nth(c, m + n - j) * gbinom(m, j)
    return lhs - rhs


def sesquilinearity_defects(a: State, b: State, n: int) -> tuple[State, State]:
    """``(Da)_(n) b + n a_(n-1) b`` and ``a_(n) Db - D(a_(n) b) - n a_(n-1) b``."""
    left = a.derivative().nth(b, n) + a.nth(b, n - 1) * n
    right = a.nth(b.derivative(), n) - a.nth(b, n).derivative() - a.nth(b, n - 1) * n
    return left, right


def grading_defect(a: State, b: State, n: int) -> str:
    """Empty when ``a_(n) b`` has weight ``wt a + wt b - n - 1`` and parity ``p(a) + p(b)``."""
    X = a.nth(b, n)
    if not X:
        return ""
    wa, wb = a.weights2(), b.weights2()
    if len(wa) != 1 or len(wb) != 1:
        raise ValueError("grading check needs homogeneous inputs")
    want = wa.pop() + wb.pop() - 2 * n - 2
    if X.weights2() != {want}:
        return f"weights {sorted(X.weights2())} != {want}"
    if X.parity != (a.parity + b.parity) % 2:
        return "parity"
    return ""


def idempotence_defect(alg: VertexAlgebra, mono: tuple) -> State:
    """Re-normalizing the letters of a PBW monomial returns it unchanged."""
    letters = [(alg.gens[g].name, -m - 1) for g, m in mono]
    again = alg.normalize_letters(letters)
    scale = 1
    for _, m in mono:
        scale *= factorial(-m - 1)
    return again - State(alg, {mono: Fraction(scale)})


def confluence_defect(alg: VertexAlgebra, word) -> State:
    """Mode straightening and the Borcherds route give the same normal form."""
    via_modes = alg.normalize_letters(word)
    acc = alg.vacuum()
    for name, d in reversed(word):
        acc = alg.gen(name, d).nop(acc)
    return via_modes - acc


def quasi_associativity_defect(a: State, b: State, c: State) -> State:
    """``::ab:c: - :a:bc:: - sum_j :(D^(j+1) a)(b_(j) c): - p sum_j :(D^(j+1) b)(a_(j) c):``."""
    lhs = a.nop(b).nop(c) - a.nop(b.nop(c))
    rhs = a.algebra.zero()
    for j, X in b.bracket(c).coeffs.items():
        rhs = rhs + a.derivative(j + 1).nop(X) * Fraction(1, factorial(j + 1))
    for j, X in a.bracket(c).coeffs.items():
        rhs = rhs + b.derivative(j + 1).nop(X) * Fraction(_sign(a, b), factorial(j + 1))
    return lhs - rhs

