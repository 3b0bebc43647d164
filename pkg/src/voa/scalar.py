"""Exact arithmetic in Q(t), the field of rational functions in one parameter.

A :class:`Scalar` is a reduced fraction of two integer polynomials.  Two
parameter contexts are provided:

* ``GENERIC``: variable ``t`` with ``k = t^2 - 1`` and ``l = t^-2 - 3``, so
  ``sqrt(k+1) = t`` and ``(k+1)(l+3) = 1`` hold identically;
* ``LIMIT``: variable ``s`` with ``l = s^-2`` and ``sqrt(l) = 1/s``.

Scalars built in one context refuse to combine with scalars of the other.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import flint

__all__ = [
    "Scalar", "ScalarError", "PoleError", "ParameterMixError",
    "ParameterContext", "GENERIC", "LIMIT", "context_for", "parse_scalar",
]


class ScalarError(ArithmeticError):
    pass


class PoleError(ScalarError):
    """Substitution hit a zero of the denominator."""

    def __init__(self, denominator, point):
        self.denominator = denominator
        self.point = point
        super().__init__(f"pole: denominator {denominator} vanishes at {point}")


class ParameterMixError(ScalarError):
    pass


_ZERO = flint.fmpz_poly([0])
_ONE = flint.fmpz_poly([1])


def _poly_str(p, var: str) -> str:
    coeffs = p.coeffs()
    if not coeffs:
        return "0"
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[deg])
        if c == 0:
            continue
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def _factored_str(p, var: str) -> str:
    """Render an integer polynomial as content times irreducible factors."""
    if p.degree() <= 0:
        return str(int(p.coeffs()[0])) if p.coeffs() else "0"
    content, factors = p.factor()
    content = int(content)
    pieces = []
    for f, e in sorted(factors, key=lambda fe: (fe[0].degree(), _poly_str(fe[0], var))):
        s = _poly_str(f, var)
        if sum(1 for c in f.coeffs() if c != 0) > 1:
            s = f"({s})"
        pieces.append(s if e == 1 else f"{s}^{e}")
    body = "*".join(pieces)
    if content == 1:
        return body
    if content == -1:
        return "-" + body
    return f"{content}*{body}"


class Scalar:
    """Element of Q(var): ``num/den`` with coprime integer polynomials.

    The denominator has positive leading coefficient.  ``var`` is ``None``
    for constants, which combine freely with either context.
    """

    __slots__ = ("num", "den", "var", "_hash")

    def __init__(self, value=0, var: str | None = None):
        if isinstance(value, Scalar):
            self.num, self.den, self.var = value.num, value.den, value.var
        else:
            q = Fraction(value)
            self.num = flint.fmpz_poly([q.numerator])
            self.den = flint.fmpz_poly([q.denominator])
            self.var = None
        if var is not None and self.var is None:
            self.var = var
        self._hash = None

    @classmethod
    def _make(cls, num, den, var):
        if not num:
            obj = object.__new__(cls)
            obj.num, obj.den, obj.var, obj._hash = _ZERO, _ONE, var, None
            return obj
        if den.degree() > 0 or den != 1:
            g = num.gcd(den)
            if g != 1:
                num = num // g
                den = den // g
            if den.coeffs()[-1] < 0:
                num, den = -num, -den
        obj = object.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        obj.var = var
        return obj

    @classmethod
    def gen(cls, var: str) -> "Scalar":
        return cls._make(flint.fmpz_poly([0, 1]), _ONE, var)

    @classmethod
    def from_polys(cls, num, den, var: str | None) -> "Scalar":
        num = flint.fmpz_poly(num)
        den = flint.fmpz_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        return cls._make(num, den, var)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __bool__(self):
        return bool(self.num)

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant")
        n = int(self.num.coeffs()[0]) if self.num else 0
        return Fraction(n, int(self.den.coeffs()[0]))

    # -- arithmetic -------------------------------------------------------
    def _var_with(self, other: "Scalar"):
        a, b = self.var, other.var
        if a == b or b is None:
            return a
        if a is None:
            return b
        if self.is_constant():
            return b
        if other.is_constant():
            return a
        raise ParameterMixError(f"cannot combine scalars in {a!r} and {b!r}")

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self
            return Scalar._make(self.num + other * self.den, self.den, self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        var = self._var_with(other)
        if not other.num:
            return self
        if not self.num:
            return other if other.var == var else Scalar._make(other.num, other.den, var)
        if self.den == other.den:
            return Scalar._make(self.num + other.num, self.den, var)
        return Scalar._make(self.num * other.den + other.num * self.den, self.den * other.den, var)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(Scalar)
        obj.num, obj.den, obj.var, obj._hash = -self.num, self.den, self.var, None
        return obj

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 1:
                return self
            if other == 0:
                return Scalar._make(_ZERO, _ONE, self.var)
            return Scalar._make(self.num * other, self.den, self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        var = self._var_with(other)
        return Scalar._make(self.num * other.num, self.den * other.den, var)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar._make(self.den, self.num, self.var)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return Scalar._make(self.num ** e, self.den ** e, self.var)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.num != other.num or self.den != other.den:
            return False
        return self.is_constant() or self.var == other.var

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.var, tuple(int(c) for c in self.num.coeffs()),
                                   tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # -- evaluation -------------------------------------------------------
    def substitute(self, value) -> "Scalar":
        """Substitute ``var = value`` (a rational number or a Scalar)."""
        if isinstance(value, Scalar):
            return self._compose(value)
        q = Fraction(value)
        point = flint.fmpq(q.numerator, q.denominator)
        d = self.den(point)
        if d == 0:
            raise PoleError(_poly_str(self.den, self.var or "x"), q)
        n = self.num(point)
        r = Fraction(int(n.p), int(n.q)) / Fraction(int(d.p), int(d.q))
        return Scalar(r)

    def _compose(self, value: "Scalar") -> "Scalar":
        def horner(p):
            acc = Scalar(0)
            for c in reversed(p.coeffs()):
                acc = acc * value + int(c)
            return acc
        d = horner(self.den)
        if d.is_zero():
            raise PoleError(_poly_str(self.den, self.var or "x"), value)
        return horner(self.num) / d

    def valuation(self) -> int:
        """Order of vanishing at var = 0 (negative for a pole)."""
        if not self.num:
            raise ScalarError("valuation of zero")

        def low(p):
            for i, c in enumerate(p.coeffs()):
                if c != 0:
                    return i
            return 0
        return low(self.num) - low(self.den)

    def is_even(self) -> bool:
        """True if num and den only involve even powers of var."""
        return all(c == 0 for c in self.num.coeffs()[1::2]) and \
            all(c == 0 for c in self.den.coeffs()[1::2])

    # -- text -------------------------------------------------------------
    def __str__(self):
        var = self.var or "t"
        if self.is_constant():
            q = self.to_fraction()
            return str(q)
        n = _poly_str(self.num, var)
        if self.den == 1:
            return n
        d = _poly_str(self.den, var)
        if " " in n:
            n = f"({n})"
        if not re.fullmatch(r"\d+|\w|\w\^\d+", d):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def factored(self, var: str | None = None) -> str:
        var = var or self.var or "t"
        if self.is_constant():
            return str(self.to_fraction())
        n = _factored_str(self.num, var)
        if self.den == 1:
            return n
        d = _factored_str(self.den, var)
        if not re.fullmatch(r"\d+|\w|\w\^\d+|\([^()]*\)", d):
            d = f"({d})"
        return f"{n}/{d}"


def _even_part(p):
    """Return q with p(x) = q(x^2); p must be even."""
    return flint.fmpz_poly([int(c) for c in p.coeffs()[0::2]] or [0])


@dataclass(frozen=True)
class ParameterContext:
    """Binding of the symbols ``k``, ``l`` and their square roots to Scalars."""

    name: str
    var: str
    bindings: dict = field(compare=False, hash=False)

    def symbol(self, name: str) -> Scalar:
        try:
            return self.bindings[name]
        except KeyError:
            raise ScalarError(f"symbol {name!r} is not bound in the {self.name} context") from None

    @property
    def t(self) -> Scalar:
        return Scalar.gen(self.var)

    def scalar(self, value) -> Scalar:
        """Coerce numbers, symbol names or scalar text into this context."""
        if isinstance(value, Scalar):
            if value.var not in (None, self.var) and not value.is_constant():
                raise ParameterMixError(f"{value} does not live in the {self.name} context")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        return Scalar(value)

    def render(self, x: Scalar, symbol: str | None = None, factored: bool = True) -> str:
        """Render ``x`` in terms of a level symbol (``k`` or ``l``) when possible."""
        if symbol is None or x.is_constant():
            return x.factored() if factored else str(x)
        expr = self._rewrite(x, symbol)
        if expr is None:
            return x.factored() if factored else str(x)
        return expr.factored(symbol) if factored else str(Scalar._make(expr.num, expr.den, symbol))

    def _rewrite(self, x: Scalar, symbol: str):
        if self.name != "generic" or not x.is_even():
            return None
        n, d = _even_part(x.num), _even_part(x.den)   # x = n(u)/d(u), u = t^2
        if symbol == "k":      # u = k + 1
            shift = flint.fmpz_poly([1, 1])
            return Scalar._make(n(shift), d(shift), "k")
        if symbol == "l":      # u = 1/(l + 3)
            deg = max(n.degree(), d.degree(), 0)
            base = flint.fmpz_poly([3, 1])

            def hom(p):
                acc = flint.fmpz_poly([0])
                for i, c in enumerate(p.coeffs()):
                    acc += int(c) * base ** (deg - i)
                return acc
            return Scalar._make(hom(n), hom(d), "l")
        return None


def _generic() -> ParameterContext:
    t = Scalar.gen("t")
    k = t * t - 1
    l = t ** -2 - 3
    return ParameterContext("generic", "t", {"t": t, "k": k, "l": l, "sqrtk1": t})


def _limit() -> ParameterContext:
    s = Scalar.gen("s")
    l = s ** -2
    k = 1 / (l + 3) - 1
    return ParameterContext("limit", "s", {"s": s, "l": l, "sqrtl": 1 / s, "k": k})


GENERIC = _generic()
LIMIT = _limit()


def context_for(name: str) -> ParameterContext:
    try:
        return {"generic": GENERIC, "limit": LIMIT}[name]
    except KeyError:
        raise ScalarError(f"unknown parameter context {name!r}") from None


# -- scalar text ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarError(f"bad scalar syntax at offset {pos}: {text!r}")
        num, name, op = m.groups()
        out.append(("num", int(num)) if num else ("name", name) if name else ("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def parse_scalar(text: str, ctx: ParameterContext) -> Scalar:
    """Parse ``"(6*l)/(l+3)"``-style text with symbols bound by ``ctx``."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def expr():
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            neg = False
            if peek() == ("op", "-"):
                take()
                neg = True
            kind, e = take()
            if kind != "num":
                raise ScalarError(f"integer exponent expected in {text!r}")
            return base ** (-e if neg else e)
        return base

    def atom():
        kind, val = take() if pos < len(toks) else (None, None)
        if kind == "num":
            return Scalar(val)
        if kind == "name":
            return ctx.symbol(val)
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ScalarError(f"unbalanced parentheses in {text!r}")
            return v
        raise ScalarError(f"unexpected token {val!r} in {text!r}")

    out = expr()
    if pos != len(toks):
        raise ScalarError(f"trailing input in scalar {text!r}")
    return out
