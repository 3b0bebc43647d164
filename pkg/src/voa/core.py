"""λ-brackets and n-th products in vertex superalgebras given by generators.

The algebras handled here are universal enveloping vertex algebras of Lie
conformal superalgebras whose generator brackets are linear: every
``a_(j) b`` is a combination of generators, their derivatives and the
vacuum.  States are stored in the PBW basis

    a1_(-m1) a2_(-m2) ... ar_(-mr) |0>,     m_i >= 1,

with letters sorted by ``(ordinal, mode)``, so higher derivatives of the
same generator come first.  The letter ``(g, -m)`` is the divided power
``D^(m-1) g / (m-1)!``; the renderers convert back to plain derivatives.

All products are computed from two primitives:

* the mode commutator ``[a_(m), b_(n)] = sum_j C(m, j) (a_(j) b)_(m+n-j)``,
  used to straighten a generator mode through a PBW monomial, and
* the Borcherds identity, which expresses the modes of a composite state
  ``a_(-p) A'`` through modes of ``a`` and of the shorter state ``A'``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, NamedTuple

from .scalar import GENERIC, ParameterContext, Scalar

__all__ = [
    "Generator", "VertexAlgebra", "State", "LambdaPolynomial", "AlgebraMismatchError",
    "BracketSpecError", "ConformalDataError", "virasoro_data", "conformal_data",
    "ope_singular", "VirasoroData", "ConformalData",
]


class AlgebraMismatchError(ValueError):
    pass


class BracketSpecError(ValueError):
    pass


class ConformalDataError(ValueError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class Generator(NamedTuple):
    name: str
    parity: int          # 0 even, 1 odd
    weight2: int         # twice the conformal weight
    ordinal: int
    algebra: str

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight2, 2)


@lru_cache(maxsize=None)
def gbinom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) for any integer n and k >= 0."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)


def _add(d: dict, key, val):
    v = d.get(key)
    v = val if v is None else v + val
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _axpy(d: dict, src: dict, c):
    """d += c * src."""
    if c == 1:
        for k, v in src.items():
            _add(d, k, v)
    else:
        for k, v in src.items():
            _add(d, k, v * c)


class VertexAlgebra:
    """Generators plus base brackets ``[g_i λ g_j]``; owns the product caches.

    ``brackets`` maps ordered name pairs to ``{n: [(coef, name_or_None, d)]}``
    meaning ``g_i (n) g_j = sum coef * D^d(name)`` (``None`` is the vacuum).
    Pairs missing from the table are filled in by skew-symmetry; pairs given
    in both orders are checked against it.
    """

    def __init__(self, name: str, generators: Iterable[tuple], brackets: dict,
                 context: ParameterContext = GENERIC, meta: dict | None = None):
        self.name = name
        self.context = context
        self.meta = dict(meta or {})
        self.gens: list[Generator] = []
        self.index: dict[str, int] = {}
        for i, spec in enumerate(generators):
            gname, parity, weight2 = spec[:3]
            alg = spec[3] if len(spec) > 3 else name
            if gname in self.index:
                raise BracketSpecError(f"duplicate generator name {gname!r}")
            if weight2 < 0:
                raise BracketSpecError(f"negative weight for {gname!r}")
            self.index[gname] = i
            self.gens.append(Generator(gname, parity % 2, weight2, i, alg))
        self.parity = [g.parity for g in self.gens]
        self.w2 = [g.weight2 for g in self.gens]
        self.raw_brackets = {}
        self._prod: dict[tuple[int, int], dict[int, list]] = {}
        for (x, y), table in brackets.items():
            i, j = self._idx(x), self._idx(y)
            entry = {}
            for n, terms in table.items():
                acc: dict = {}
                for coef, c, d in terms:
                    coef = context.scalar(coef)
                    if c is None:
                        if d:
                            continue
                        _add(acc, None, coef)
                    else:
                        # D^d c = d! * (divided power)
                        _add(acc, (self._idx(c), d), coef * factorial(d))
                if acc:
                    entry[int(n)] = [(v, None, 0) if key is None else (v, key[0], key[1])
                                     for key, v in sorted(acc.items(), key=_lin_key)]
            self.raw_brackets[(x, y)] = table
            self._prod[(i, j)] = entry
        for (i, j), entry in list(self._prod.items()):
            mirror = self._skew(i, j, entry)
            if (j, i) in self._prod:
                if _canon_table(self._prod[(j, i)]) != _canon_table(mirror):
                    raise BracketSpecError(
                        f"brackets of {self.gens[i].name}, {self.gens[j].name} violate skew-symmetry")
            else:
                self._prod[(j, i)] = mirror
        self._check_weights()
        self._comm_cache: dict = {}
        self._am_cache: dict = {}
        self._fm_cache: dict = {}
        self._d_cache: dict = {}

    # -- set-up helpers -------------------------------------------------------
    def _idx(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.index[name]
        except KeyError:
            raise BracketSpecError(f"unknown generator {name!r} in {self.name}") from None

    def _skew(self, i, j, entry):
        """Table of g_j (n) g_i from that of g_i (n) g_j."""
        sign = -1 if (self.parity[i] and self.parity[j]) else 1
        out: dict[int, dict] = {}
        for n, terms in entry.items():
            for q in range(n + 1):          # D^(n-q) applied to the n-th product lands at λ^(q)
                r = n - q
                c = -sign * (-1) ** n
                for coef, g, d in terms:
                    if g is None:
                        if r == 0:
                            _add(out.setdefault(q, {}), None, coef * c)
                    else:
                        _add(out.setdefault(q, {}), (g, d + r), coef * (c * gbinom(d + r, r)))
        return {q: [(v, None, 0) if key is None else (v, key[0], key[1])
                    for key, v in sorted(acc.items(), key=_lin_key)]
                for q, acc in out.items() if acc}

    def _check_weights(self):
        for (i, j), entry in self._prod.items():
            target = self.w2[i] + self.w2[j]
            for n, terms in entry.items():
                for coef, g, d in terms:
                    w = 0 if g is None else self.w2[g] + 2 * d
                    if w != target - 2 * n - 2:
                        raise BracketSpecError(
                            f"bracket {self.gens[i].name}({n}){self.gens[j].name} is not weight-homogeneous")
                    if (0 if g is None else self.parity[g]) != (self.parity[i] + self.parity[j]) % 2:
                        raise BracketSpecError(
                            f"bracket {self.gens[i].name}({n}){self.gens[j].name} breaks parity")

    def base_bracket(self, a: str, b: str) -> "LambdaPolynomial":
        i, j = self._idx(a), self._idx(b)
        coeffs = {}
        for n, terms in self._prod.get((i, j), {}).items():
            d: dict = {}
            for coef, g, r in terms:
                _add(d, () if g is None else ((g, -r - 1),), coef)
            coeffs[n] = State(self, d)
        return LambdaPolynomial(self, coeffs)

    # -- public constructors ---------------------------------------------------
    def gen(self, name: str, d: int = 0) -> "State":
        """The state ``D^d name``."""
        i = self._idx(name)
        return State(self, {((i, -d - 1),): Scalar(factorial(d))})

    def vacuum(self) -> "State":
        return State(self, {(): Scalar(1)})

    def zero(self) -> "State":
        return State(self, {})

    def scalar(self, value) -> Scalar:
        return self.context.scalar(value)

    def __repr__(self):
        return f"VertexAlgebra({self.name!r}, {len(self.gens)} generators, {self.context.name})"

    # -- monomial bookkeeping ---------------------------------------------------
    def mono_weight2(self, mono) -> int:
        w2 = self.w2
        return sum(w2[g] - 2 * m - 2 for g, m in mono)

    def mono_parity(self, mono) -> int:
        p = self.parity
        return sum(p[g] for g, _ in mono) % 2

    # -- mode algebra ----------------------------------------------------------------
    def commutator(self, a: int, m: int, b: int, n: int):
        """``[a_(m), b_(n)]`` as a list of ``(coef, gen, mode)``; gen None is a scalar."""
        key = (a, m, b, n)
        hit = self._comm_cache.get(key)
        if hit is not None:
            return hit
        acc: dict = {}
        for j, terms in self._prod.get((a, b), {}).items():
            bj = gbinom(m, j)
            if not bj:
                continue
            q = m + n - j
            for coef, g, r in terms:
                if g is None:
                    if q == -1:
                        _add(acc, None, coef * bj)
                else:
                    c = (-1) ** r * gbinom(q, r)
                    if c:
                        _add(acc, (g, q - r), coef * (bj * c))
        out = [(v, None, None) if key2 is None else (v, key2[0], key2[1])
               for key2, v in sorted(acc.items(), key=_lin_key)]
        self._comm_cache[key] = out
        return out

    def apply_mode(self, a: int, m: int, mono: tuple) -> dict:
        """``a_(m)`` applied to a PBW monomial, straightened to PBW form."""
        key = (a, m, mono)
        hit = self._am_cache.get(key)
        if hit is not None:
            return hit
        if not mono:
            out = {} if m >= 0 else {((a, m),): 1}
            self._am_cache[key] = out
            return out
        first = mono[0]
        letter = (a, m)
        if m < 0 and (letter < first or (letter == first and not self.parity[a])):
            out = {(letter,) + mono: 1}
            self._am_cache[key] = out
            return out
        b, n = first
        rest = mono[1:]
        out: dict = {}
        comm = self.commutator(a, m, b, n)
        if letter == first:
            # odd a: a_(m) a_(m) = [a_(m), a_(m)] / 2
            for coef, g, p in comm:
                if g is None:
                    _add(out, rest, coef * Fraction(1, 2))
                else:
                    _axpy(out, self.apply_mode(g, p, rest), coef * Fraction(1, 2))
            self._am_cache[key] = out
            return out
        for coef, g, p in comm:
            if g is None:
                _add(out, rest, coef)
            else:
                _axpy(out, self.apply_mode(g, p, rest), coef)
        sign = -1 if (self.parity[a] and self.parity[b]) else 1
        inner = self.apply_mode(a, m, rest)
        for mono2, c in inner.items():
            _axpy(out, self.apply_mode(b, n, mono2), c * sign)
        self._am_cache[key] = out
        return out

    def apply_mode_terms(self, a: int, m: int, terms: dict) -> dict:
        out: dict = {}
        for mono, c in terms.items():
            _axpy(out, self.apply_mode(a, m, mono), c)
        return out

    def field_mode(self, A: tuple, n: int, C: tuple) -> dict:
        """``A_(n) C`` for PBW monomials A and C (Borcherds identity)."""
        if not A:
            return {C: 1} if n == -1 else {}
        key = (A, n, C)
        hit = self._fm_cache.get(key)
        if hit is not None:
            return hit
        a, q = A[0]
        p = -q
        rest = A[1:]
        out: dict = {}
        if not rest:
            # (D^(p-1) a)_(n) = (-1)^(p-1) C(n, p-1) a_(n-p+1)
            c = (-1) ** (p - 1) * gbinom(n, p - 1)
            if c:
                _axpy(out, self.apply_mode(a, n - p + 1, C), c)
            self._fm_cache[key] = out
            return out
        w2r = self.mono_weight2(rest)
        w2C = self.mono_weight2(C)
        # sum_j C(p+j-1, j) a_(-p-j) rest_(n+j) C
        jmax = (w2r + w2C) // 2 - n - 1
        for j in range(0, jmax + 1):
            X = self.field_mode(rest, n + j, C)
            if not X:
                continue
            c = gbinom(p + j - 1, j)
            for mono, v in X.items():
                _axpy(out, self.apply_mode(a, -p - j, mono), v * c)
        # - (-1)^p (-1)^{|a||rest|} sum_j C(p+j-1, j) rest_(n-p-j) a_(j) C
        sign = -((-1) ** p)
        if self.parity[a] and self.mono_parity(rest):
            sign = -sign
        jmax = (self.w2[a] + w2C) // 2 - 1
        for j in range(0, jmax + 1):
            Y = self.apply_mode(a, j, C)
            if not Y:
                continue
            c = sign * gbinom(p + j - 1, j)
            for mono, v in Y.items():
                _axpy(out, self.field_mode(rest, n - p - j, mono), v * c)
        self._fm_cache[key] = out
        return out

    def derive_mono(self, mono: tuple) -> dict:
        """Translation T on a PBW monomial; ``[T, a_(m)] = -m a_(m-1)``."""
        if not mono:
            return {}
        hit = self._d_cache.get(mono)
        if hit is not None:
            return hit
        (a, m), rest = mono[0], mono[1:]
        out: dict = {}
        _axpy(out, self.apply_mode(a, m - 1, rest), -m)
        for mono2, c in self.derive_mono(rest).items():
            _axpy(out, self.apply_mode(a, m, mono2), c)
        self._d_cache[mono] = out
        return out

    def clear_caches(self):
        for c in (self._comm_cache, self._am_cache, self._fm_cache, self._d_cache):
            c.clear()

    def cache_sizes(self) -> dict:
        return {"commutator": len(self._comm_cache), "apply_mode": len(self._am_cache),
                "field_mode": len(self._fm_cache), "derivative": len(self._d_cache)}

    # -- state-level operations ----------------------------------------------------
    def normalize_letters(self, letters: Iterable[tuple[str, int]]) -> "State":
        """Normal form of the right-nested product :D^d1 g1 (D^d2 g2 (...)):."""
        terms: dict = {(): Scalar(1)}
        for name, d in reversed(list(letters)):
            i = self._idx(name)
            terms = {k: v * factorial(d) for k, v in self.apply_mode_terms(i, -d - 1, terms).items()}
        return State(self, terms)


def _lin_key(item):
    key = item[0]
    return (-1, 0) if key is None else key


def _canon_table(entry):
    return {n: sorted(((g if g is not None else -1, d, str(c)) for c, g, d in terms))
            for n, terms in entry.items() if terms}


class State:
    """Finite combination of PBW monomials with Scalar coefficients.

    ``tag`` marks states of a Fock module (the highest-weight label); plain
    vacuum-module states have ``tag=None``.
    """

    __slots__ = ("algebra", "terms", "tag")

    def __init__(self, algebra: VertexAlgebra, terms: dict, tag=None):
        self.algebra = algebra
        clean = {}
        for k, v in terms.items():
            if v:
                clean[k] = v if isinstance(v, Scalar) else Scalar(v)
        self.terms = clean
        self.tag = tag

    # -- linear structure -------------------------------------------------------
    def _check(self, other: "State"):
        if not isinstance(other, State):
            raise TypeError(f"expected a State, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError(
                f"states live in different algebras: {self.algebra.name} vs {other.algebra.name}")
        if other.tag != self.tag:
            raise AlgebraMismatchError("states live in different Fock modules")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        d = dict(self.terms)
        for k, v in other.terms.items():
            _add(d, k, v)
        return State(self.algebra, d, self.tag)

    __radd__ = __add__

    def __neg__(self):
        return State(self.algebra, {k: -v for k, v in self.terms.items()}, self.tag)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, State):
            return NotImplemented
        c = self.algebra.scalar(c)
        if not c:
            return State(self.algebra, {}, self.tag)
        return State(self.algebra, {k: v * c for k, v in self.terms.items()}, self.tag)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / self.algebra.scalar(c))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, State):
            return NotImplemented
        return (self.algebra is other.algebra and self.tag == other.tag
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.algebra.name, self.tag, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def map_coefficients(self, f) -> "State":
        return State(self.algebra, {k: f(v) for k, v in self.terms.items()}, self.tag)

    # -- grading ----------------------------------------------------------------
    def weights2(self) -> set[int]:
        return {self.algebra.mono_weight2(m) for m in self.terms}

    @property
    def weight(self) -> Fraction:
        """Conformal weight of a homogeneous state."""
        ws = self.weights2()
        if len(ws) != 1:
            raise ValueError(f"state is not weight-homogeneous: {sorted(ws)}")
        return Fraction(ws.pop(), 2)

    @property
    def parity(self) -> int:
        ps = {self.algebra.mono_parity(m) for m in self.terms}
        if len(ps) > 1:
            raise ValueError("state has mixed parity")
        return ps.pop() if ps else 0

    def homogeneous_components(self) -> dict[int, "State"]:
        out: dict[int, dict] = {}
        for m, v in self.terms.items():
            out.setdefault(self.algebra.mono_weight2(m), {})[m] = v
        return {w: State(self.algebra, d, self.tag) for w, d in sorted(out.items())}

    # -- products -----------------------------------------------------------------
    def _vacuum_module(self, other: "State"):
        self._check(other)
        if self.tag is not None:
            raise AlgebraMismatchError("products are only defined on the vacuum module")

    def nth(self, other: "State", n: int) -> "State":
        """The n-th product ``self_(n) other`` for any integer n."""
        self._vacuum_module(other)
        alg = self.algebra
        acc: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                X = alg.field_mode(ma, n, mb)
                if X:
                    _axpy(acc, X, ca * cb)
        return State(alg, acc)

    def nop(self, other: "State") -> "State":
        """Normally ordered product ``:self other:``."""
        return self.nth(other, -1)

    def bracket(self, other: "State") -> "LambdaPolynomial":
        """``[self λ other]`` with divided-power coefficients."""
        self._vacuum_module(other)
        alg = self.algebra
        coeffs: dict[int, dict] = {}
        for ma, ca in self.terms.items():
            wa = alg.mono_weight2(ma)
            for mb, cb in other.terms.items():
                top = (wa + alg.mono_weight2(mb)) // 2 - 1
                for n in range(0, top + 1):
                    X = alg.field_mode(ma, n, mb)
                    if X:
                        _axpy(coeffs.setdefault(n, {}), X, ca * cb)
        return LambdaPolynomial(alg, {n: State(alg, d) for n, d in coeffs.items()})

    def derivative(self, times: int = 1) -> "State":
        cur = self
        for _ in range(times):
            cur = cur._derive_once()
        return cur

    def _derive_once(self) -> "State":
        alg = self.algebra
        acc: dict = {}
        for m, c in self.terms.items():
            _axpy(acc, alg.derive_mono(m), c)
        if self.tag is not None:
            # T v_mu = mu_(-1) v_mu, pushed to the right of the creation modes
            mu_terms = self.tag.creation_terms(alg)
            for m, c in self.terms.items():
                cur = mu_terms
                for g, mode in reversed(m):
                    cur = alg.apply_mode_terms(g, mode, cur)
                _axpy(acc, cur, c)
        return State(alg, acc, self.tag)

    # -- text -----------------------------------------------------------------------
    def render(self, style: str = "colon", symbol: str | None = None) -> str:
        """Text form: ``colon`` uses :a b: colons, ``expr`` the CLI grammar."""
        return render_state(self, style=style, symbol=symbol)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"State({self.render()})"

    def coefficient(self, letters: Iterable[tuple[str, int]]) -> Scalar:
        """Coefficient of a PBW monomial given as (name, derivative order) letters."""
        target = self.algebra.normalize_letters(letters)
        if len(target.terms) != 1:
            raise ValueError("letters do not form a single PBW monomial")
        (mono, scale), = target.terms.items()
        return self.terms.get(mono, Scalar(0)) * scale


class LambdaPolynomial:
    """``sum_n λ^(n) coeffs[n]`` with ``λ^(n) = λ^n / n!``."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: VertexAlgebra, coeffs: dict[int, State]):
        self.algebra = algebra
        self.coeffs = {n: s for n, s in sorted(coeffs.items()) if s}

    def __getitem__(self, n: int) -> State:
        return self.coeffs.get(n, self.algebra.zero())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, LambdaPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def __neg__(self):
        return LambdaPolynomial(self.algebra, {n: -s for n, s in self.coeffs.items()})

    def __sub__(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return LambdaPolynomial(self.algebra, {n: self[n] - other[n] for n in keys})

    def __add__(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return LambdaPolynomial(self.algebra, {n: self[n] + other[n] for n in keys})

    def __mul__(self, c):
        return LambdaPolynomial(self.algebra, {n: s * c for n, s in self.coeffs.items()})

    __rmul__ = __mul__

    def render(self, style: str = "colon", symbol: str | None = None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n, s in self.coeffs.items():
            body = s.render(style, symbol)
            lam = "" if n == 0 else ("λ" if n == 1 else f"λ^({n})")
            parts.append(f"({body})" if not lam else f"{lam}*({body})")
        return " + ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LambdaPolynomial({self.render()})"


# -- rendering ---------------------------------------------------------------------

def _letter_text(alg: VertexAlgebra, g: int, m: int, style: str) -> str:
    name = alg.gens[g].name
    d = -m - 1
    if d == 0:
        return name
    if style == "expr":
        return f"D({name})" if d == 1 else f"D^{d}({name})"
    return f"D{name}" if d == 1 else f"D^{d}{name}"


def _mono_scale(mono) -> int:
    out = 1
    for _, m in mono:
        out *= factorial(-m - 1)
    return out


def _mono_text(alg: VertexAlgebra, mono, style: str) -> str:
    letters = [_letter_text(alg, g, m, style) for g, m in mono]
    if not letters:
        return "|0>" if style == "colon" else "1"
    if style == "expr":
        acc = letters[-1]
        for x in reversed(letters[:-1]):
            acc = f"no({x}, {acc})"
        return acc
    if len(letters) == 1:
        return letters[0]
    return ":" + " ".join(letters) + ":"


def _default_symbol(alg: VertexAlgebra, symbol):
    if symbol is not None:
        return symbol
    return "k" if alg.context.name == "generic" else None


def _coef_text(alg: VertexAlgebra, c: Scalar, symbol: str | None, style: str) -> str:
    if style == "expr":
        s = str(c)
        return f"({s})" if _has_top_level_sum(s) else s
    s = alg.context.render(c, _default_symbol(alg, symbol))
    if c.is_constant() and "/" not in s:
        return s
    return f"({s})" if _has_top_level_sum(s) else s


def _has_top_level_sum(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0:
            return True
    return False


def render_state(state: State, style: str = "colon", symbol: str | None = None) -> str:
    alg = state.algebra
    if not state.terms:
        return "0"
    parts = []
    for mono in sorted(state.terms, key=lambda m: (alg.mono_weight2(m), len(m), m)):
        c = state.terms[mono] / _mono_scale(mono)
        body = _mono_text(alg, mono, style)
        neg = False
        if c.is_constant() and c.to_fraction() < 0:
            c, neg = -c, True
        if not mono:
            text = "1" if c == 1 else _coef_text(alg, c, symbol, style)
            if style == "colon" and state.tag is None:
                text = "|0>" if text == "1" else f"{text}|0>"
        elif c == 1:
            text = body
        else:
            text = f"{_coef_text(alg, c, symbol, style)}*{body}"
        if text.startswith("-"):
            text, neg = text[1:], not neg
        parts.append(("-", text) if neg else ("+", text))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, text in parts[1:]:
        out += f" {sgn} {text}"
    if state.tag is not None:
        out = f"|{state.tag.label}>" if out == "1" else f"({out})|{state.tag.label}>"
    return out


# -- Virasoro and conformal data -----------------------------------------------------

@dataclass(frozen=True)
class VirasoroData:
    is_virasoro: bool
    central_charge: Scalar | None
    defect: str = ""


@dataclass(frozen=True)
class ConformalData:
    weight: Fraction
    primary: bool


def virasoro_data(L: State) -> VirasoroData:
    """Check ``[L λ L] = (D + 2λ)L + (λ^3/12) c`` and return c."""
    br = L.bracket(L)
    alg = L.algebra
    if br[0] != L.derivative():
        return VirasoroData(False, None, "L_(0)L != DL")
    if br[1] != 2 * L:
        return VirasoroData(False, None, "L_(1)L != 2L")
    if br[2]:
        return VirasoroData(False, None, "L_(2)L != 0")
    top = br[3]
    if any(mono for mono in top.terms):
        return VirasoroData(False, None, "L_(3)L is not central")
    if br.degree() > 3:
        return VirasoroData(False, None, "poles beyond fourth order")
    c = top.terms.get((), Scalar(0)) * 2
    return VirasoroData(True, alg.scalar(c))


def conformal_data(L: State, A: State) -> ConformalData:
    """Weight and primarity of ``A`` with respect to the Virasoro element ``L``."""
    if not A:
        raise ConformalDataError("zero state has no conformal weight")
    br = L.bracket(A)
    l1 = br[1]
    mono, c = next(iter(A.terms.items()))
    ratio = l1.terms.get(mono, Scalar(0)) / c
    defect = l1 - A * ratio
    if defect:
        raise ConformalDataError(f"state is not an L_(1) eigenvector; defect {defect}", defect)
    if not ratio.is_constant():
        raise ConformalDataError(f"L_(1) eigenvalue {ratio} is not a number")
    primary = all(not br[n] for n in range(2, br.degree() + 1))
    return ConformalData(ratio.to_fraction(), primary)


def ope_singular(A: State, B: State, names: dict[str, State] | None = None,
                 symbol: str | None = None) -> str:
    """Render ``A(z)B(w) ~ sum_n (A_(n)B)(w)/(z-w)^(n+1)``.

    With ``names``, each pole is decomposed on the named states when it lies
    in their span, and rendered through those names.
    """
    br = A.bracket(B)
    if br.is_zero():
        return "0"
    pieces = []
    for n in sorted(br.coeffs, reverse=True):
        X = br[n]
        body = None
        if names:
            from .linalg import decompose
            cand = [(k, v) for k, v in names.items() if v.weights2() == X.weights2()]
            sol = decompose(X, [v for _, v in cand]) if cand else None
            if sol is not None:
                body = ""
                for (k, _), c in zip(cand, sol):
                    if c:
                        coef = "" if c == 1 else _coef_text(A.algebra, c, symbol, "colon") + "*"
                        if coef == "-1*":
                            coef = "-"
                        text = f"{coef}{k}(w)"
                        if not body:
                            body = text
                        elif text.startswith("-"):
                            body += f" - {text[1:]}"
                        else:
                            body += f" + {text}"
        if body is None:
            if X.terms.keys() == {()}:
                body = A.algebra.context.render(X.terms[()], _default_symbol(A.algebra, symbol))
            else:
                body = X.render("colon", symbol)
        denom = "(z-w)" if n == 0 else f"(z-w)^{n + 1}"
        wrap = _has_top_level_sum(body) or "/" in body
        pieces.append(f"({body})/{denom}" if wrap else f"{body}/{denom}")
    return " + ".join(pieces)
