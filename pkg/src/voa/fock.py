"""Brute-force Fock-space representation of free-field algebras.

Independent of the mode-algebra engine: vectors are occupation lists of
creation modes, annihilators act by explicit contraction, and the modes of a
composite field come from the normal-ordering formula

    (:x R:)_(n) = sum_{j<0} x_(j) R_(n-j-1) + (-1)^{p(x)p(R)} sum_{j>=0} R_(n-j-1) x_(j).

Only used to cross-check the engine on bc-systems and Heisenberg algebras.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

__all__ = ["FockOracle", "falling_binomial"]


def falling_binomial(n: int, d: int) -> Fraction:
    """``n (n-1) ... (n-d+1) / d!`` for any integer n."""
    num = 1
    for i in range(d):
        num *= n - i
    return Fraction(num, factorial(d))


class FockOracle:
    """Vacuum module of a free algebra with constant brackets.

    ``bosons`` maps each even generator to its weight-one pairing row
    (``[a_(m), b_(n)] = m G(a, b) delta_{m+n,0}``); ``fermions`` maps each odd
    weight-1/2 generator to its pairing row (``{x_(m), y_(n)} = P(x, y) delta_{m+n,-1}``).
    """

    def __init__(self, bosons: dict[str, dict[str, object]] | None = None,
                 fermions: dict[str, dict[str, object]] | None = None):
        self.bosons = bosons or {}
        self.fermions = fermions or {}
        self.order = {name: i for i, name in enumerate(sorted(set(self.bosons) | set(self.fermions)))}

    # -- generators ---------------------------------------------------------------------
    def odd(self, g: str) -> bool:
        return g in self.fermions

    def weight(self, g: str) -> Fraction:
        return Fraction(1, 2) if self.odd(g) else Fraction(1)

    def vec_weight(self, key) -> Fraction:
        return sum((self.weight(g) - m - 1 for g, m in key), Fraction(0))

    def _key(self, letter):
        return (self.order[letter[0]], letter[1])

    def mode(self, g: str, m: int, vec: dict) -> dict:
        """``g_(m)`` on a vector ``{tuple_of_letters: coefficient}``."""
        out: dict = {}
        for key, c in vec.items():
            for k2, c2 in self._mode_on_basis(g, m, key):
                v = out.get(k2, 0) + c * c2
                if v:
                    out[k2] = v
                else:
                    out.pop(k2, None)
        return out

    def _mode_on_basis(self, g, m, key):
        if self.odd(g):
            if m < 0:
                return self._insert_fermion(g, m, key)
            res = []
            seen = 0
            for pos, (h, n) in enumerate(key):
                if self.odd(h):
                    p = self.fermions[g].get(h, 0)
                    if p and m + n == -1:
                        res.append((key[:pos] + key[pos + 1:], p * (-1) ** seen))
                    seen += 1
            return res
        if m < 0:
            new = tuple(sorted(key + ((g, m),), key=self._key))
            return [(new, 1)]
        if m == 0:
            return []
        res = []
        for pos, (h, n) in enumerate(key):
            if not self.odd(h):
                gval = self.bosons[g].get(h, 0)
                if gval and m + n == 0:
                    res.append((key[:pos] + key[pos + 1:], m * gval))
        return res

    def _insert_fermion(self, g, m, key):
        if (g, m) in key:
            return []
        kg = self._key((g, m))
        pos = 0
        while pos < len(key) and self._key(key[pos]) < kg:
            pos += 1
        crossed = sum(1 for h, _ in key[:pos] if self.odd(h))
        return [(key[:pos] + ((g, m),) + key[pos:], (-1) ** crossed)]

    # -- composite fields ---------------------------------------------------------------
    def letter_mode(self, g: str, d: int, j: int, vec: dict) -> dict:
        """``(D^(d) g)_(j)`` with divided-power derivative ``D^(d) = D^d / d!``."""
        c = (-1) ** d * falling_binomial(j, d)
        if not c:
            return {}
        return {k: v * c for k, v in self.mode(g, j - d, vec).items()}

    def field_mode(self, letters: tuple, n: int, vec: dict) -> dict:
        """Modes of ``:x1 (:x2 (...):):`` with letters ``(g, d)`` meaning ``D^(d) g``."""
        if not vec:
            return {}
        if not letters:
            return dict(vec) if n == -1 else {}
        (g, d), rest = letters[0], letters[1:]
        if not rest:
            return self.letter_mode(g, d, n, vec)
        wx = self.weight(g) + d
        wr = sum((self.weight(h) + e for h, e in rest), Fraction(0))
        wv = max(self.vec_weight(k) for k in vec)
        out: dict = {}
        lo = int(n - wv - wr) - 1
        for j in range(lo, 0):
            part = self.field_mode(rest, n - j - 1, vec)
            if part:
                _acc(out, self.letter_mode(g, d, j, part))
        sign = -1 if (self.odd(g) and sum(self.odd(h) for h, _ in rest) % 2) else 1
        for j in range(0, int(wv + wx) + 1):
            part = self.letter_mode(g, d, j, vec)
            if part:
                _acc(out, self.field_mode(rest, n - j - 1, part), sign)
        return out

    # -- conversion from the engine -------------------------------------------------
    def from_engine(self, state) -> dict:
        """Rebuild an engine State by applying its creation modes to the vacuum."""
        alg = state.algebra
        out: dict = {}
        for mono, c in state.terms.items():
            vec = {(): 1}
            for g, m in reversed(mono):
                vec = self.mode(alg.gens[g].name, m, vec)
            _acc(out, vec, c)
        return out

    @staticmethod
    def letters_of(algebra, mono) -> tuple:
        """Field letters ``(name, d)`` of a PBW monomial (mode ``-d-1``)."""
        return tuple((algebra.gens[g].name, -m - 1) for g, m in mono)


def _acc(out: dict, src: dict, c=1):
    for k, v in src.items():
        x = out.get(k, 0) + v * c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
