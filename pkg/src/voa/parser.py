"""Surface syntax for states: parsing, rendering, evaluation.

Grammar::

    expr     := sum
    sum      := ["-"] prodterm (("+" | "-") prodterm)*
    prodterm := (scalar "*")? atom
    atom     := name | call | "(" expr ")"
    call     := ident "(" expr ("," expr)* ("," int)? ")"

Calls: ``D(x)``, ``D^m(x)``, ``no(x, y, ...)`` (right-nested), ``prod(x, y, n)``
and ``bra(x, y)``.  Names are matched longest-first against the registry, so
``G+(1)`` and ``G-^`` are single names.  Scalar literals are rational
functions in the parameter symbols ``k``, ``l``, ``t``, ``s``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import LambdaPolynomial, State
from .scalar import ParameterContext, parse_scalar

__all__ = [
    "ParseError", "NameResolutionError", "Name", "Deriv", "NormalOrder", "Product", "Bracket",
    "Scaled", "Sum", "parse_expression", "render_expression", "names_in", "evaluate",
    "PARAMETER_SYMBOLS", "RESERVED_CALLS",
]

PARAMETER_SYMBOLS = ("k", "l", "t", "s")
RESERVED_CALLS = ("D", "no", "prod", "bra")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class NameResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Deriv:
    order: int
    arg: "Node"


@dataclass(frozen=True)
class NormalOrder:
    args: tuple


@dataclass(frozen=True)
class Product:
    left: "Node"
    right: "Node"
    n: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Scaled:
    scalar: str          # canonical scalar text, whitespace removed
    arg: "Node"


@dataclass(frozen=True)
class Sum:
    terms: tuple         # ((sign, node), ...), sign in {1, -1}


Node = Union[Name, Deriv, NormalOrder, Product, Bracket, Scaled, Sum]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(\[[0-9]+(,[0-9]+)*\])?")
_INT = re.compile(r"[0-9]+")
_SCALAR_CHARS = re.compile(r"[0-9klts+\-*/^() ]")


class _Parser:
    def __init__(self, text: str, names):
        self.text = text
        self.pos = 0
        # longest names first so that "G+(1)" wins over "G+"
        self.names = sorted(set(names), key=len, reverse=True)

    # -- low-level --------------------------------------------------------------
    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise ParseError(f"expected {s!r}, found {found!r}", self._byte(self.pos))
        self.pos += len(s)

    def _byte(self, pos):
        return len(self.text[:pos].encode())

    def error(self, msg):
        return ParseError(msg, self._byte(self.pos))

    # -- grammar ----------------------------------------------------------------------
    def parse(self) -> Node:
        node = self.expr()
        self.ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.peek("-") and not self._name_at():
            self.pos += 1
            sign = -1
        terms.append((sign, self.prodterm()))
        while True:
            if self.peek("+") and not self._name_at():
                self.pos += 1
                terms.append((1, self.prodterm()))
            elif self.peek("-") and not self._name_at():
                self.pos += 1
                terms.append((-1, self.prodterm()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def prodterm(self) -> Node:
        save = self.pos
        scalar = self._try_scalar()
        if scalar is not None:
            return Scaled(scalar, self.atom())
        self.pos = save
        return self.atom()

    def _try_scalar(self):
        """Longest scalar literal followed by '*' and the start of an atom."""
        self.ws()
        start = self.pos
        if self._name_at():
            return None
        end = start
        depth = 0
        cands = []
        while end < len(self.text) and _SCALAR_CHARS.match(self.text[end]):
            ch = self.text[end]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    break
            if ch == "*" and depth == 0:
                cands.append(end)
            end += 1
        for star in reversed(cands):
            lit = self.text[start:star]
            if not lit.strip() or not _looks_scalar(lit):
                continue
            try:
                _check_scalar_syntax(lit)
            except ValueError:
                continue
            self.pos = star + 1
            self.ws()
            if self._atom_start():
                return re.sub(r"\s+", "", lit)
        self.pos = start
        return None

    def _atom_start(self) -> bool:
        return self._name_at() is not None or self.peek("(") or bool(_IDENT.match(self.text, self.pos))

    def _name_at(self):
        self.ws()
        for nm in self.names:
            if self.text.startswith(nm, self.pos):
                after = self.pos + len(nm)
                # a registry name must not run into a longer identifier
                if nm[-1].isalnum() and after < len(self.text) and (self.text[after].isalnum() or self.text[after] == "_"):
                    continue
                return nm
        return None

    def atom(self) -> Node:
        self.ws()
        nm = self._name_at()
        if nm is not None and not (nm in RESERVED_CALLS and self.text.startswith("(", self.pos + len(nm))):
            self.pos += len(nm)
            return Name(nm)
        if self.peek("("):
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error("expected a name, call or parenthesised expression")
        ident = m.group(0)
        start = self.pos
        self.pos = m.end()
        order = None
        if ident == "D" and self.peek("^"):
            self.pos += 1
            self.ws()
            mi = _INT.match(self.text, self.pos)
            if not mi:
                raise self.error("expected derivative order after 'D^'")
            order = int(mi.group(0))
            self.pos = mi.end()
        if not self.peek("("):
            if ident in PARAMETER_SYMBOLS:
                raise ParseError(f"parameter {ident!r} used where a state is expected", self._byte(start))
            raise ParseError(f"unknown name {ident!r}", self._byte(start))
        if ident not in RESERVED_CALLS:
            raise ParseError(f"unknown function {ident!r}", self._byte(start))
        self.expect("(")
        args = [self.expr()]
        int_arg = None
        while self.peek(","):
            self.pos += 1
            self.ws()
            mi = re.compile(r"-?[0-9]+\s*\)").match(self.text, self.pos)
            if mi:
                num = re.match(r"-?[0-9]+", self.text[self.pos:]).group(0)
                self.pos += len(num)
                int_arg = int(num)
                break
            args.append(self.expr())
        self.expect(")")
        return self._build(ident, order, args, int_arg, start)

    def _build(self, ident, order, args, int_arg, start):
        off = self._byte(start)
        if ident == "D":
            if len(args) != 1 or int_arg is not None:
                raise ParseError("D takes exactly one argument", off)
            return Deriv(1 if order is None else order, args[0])
        if order is not None:
            raise ParseError("only D accepts an order", off)
        if ident == "no":
            if len(args) < 2 or int_arg is not None:
                raise ParseError("no takes at least two state arguments", off)
            return NormalOrder(tuple(args))
        if ident == "prod":
            if len(args) != 2 or int_arg is None:
                raise ParseError("prod takes two states and an integer", off)
            return Product(args[0], args[1], int_arg)
        if ident == "bra":
            if len(args) != 2 or int_arg is not None:
                raise ParseError("bra takes exactly two arguments", off)
            return Bracket(args[0], args[1])
        raise ParseError(f"unknown function {ident!r}", off)


def _looks_scalar(lit: str) -> bool:
    return re.fullmatch(r"[0-9klts+\-*/^() ]+", lit) is not None


def _check_scalar_syntax(lit: str):
    """Syntax-only check with every parameter bound to a dummy value."""
    from .scalar import GENERIC, Scalar
    dummy = ParameterContext("syntax", "t", {"t": GENERIC.t, "k": GENERIC.t, "l": GENERIC.t,
                                             "s": GENERIC.t, "sqrtk1": GENERIC.t})
    parse_scalar(lit, dummy)
    return Scalar


def parse_expression(text: str, names) -> Node:
    """Parse ``text``; ``names`` are the registry identifiers in scope."""
    return _Parser(text, names).parse()


# -- rendering -----------------------------------------------------------------------------

def render_expression(node: Node) -> str:
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Deriv):
        head = "D" if node.order == 1 else f"D^{node.order}"
        return f"{head}({render_expression(node.arg)})"
    if isinstance(node, NormalOrder):
        return "no(" + ", ".join(render_expression(a) for a in node.args) + ")"
    if isinstance(node, Product):
        return f"prod({render_expression(node.left)}, {render_expression(node.right)}, {node.n})"
    if isinstance(node, Bracket):
        return f"bra({render_expression(node.left)}, {render_expression(node.right)})"
    if isinstance(node, Scaled):
        inner = render_expression(node.arg)
        if isinstance(node.arg, Sum):
            inner = f"({inner})"
        return f"{node.scalar}*{inner}"
    if isinstance(node, Sum):
        out = []
        for i, (sign, term) in enumerate(node.terms):
            text = render_expression(term)
            if isinstance(term, Sum):
                text = f"({text})"
            if i == 0:
                out.append(text if sign == 1 else f"-{text}")
            else:
                out.append(("+ " if sign == 1 else "- ") + text)
        return " ".join(out)
    raise TypeError(f"not an expression node: {node!r}")


def names_in(node: Node) -> list[str]:
    out = []

    def walk(n):
        if isinstance(n, Name):
            out.append(n.ident)
        elif isinstance(n, (Deriv, Scaled)):
            walk(n.arg)
        elif isinstance(n, NormalOrder):
            for a in n.args:
                walk(a)
        elif isinstance(n, (Product, Bracket)):
            walk(n.left)
            walk(n.right)
        elif isinstance(n, Sum):
            for _, t in n.terms:
                walk(t)
    walk(node)
    return out


def evaluate(node: Node, lookup, context: ParameterContext):
    """Evaluate to a State (or LambdaPolynomial for a top-level bra)."""
    if isinstance(node, Name):
        return lookup(node.ident)
    if isinstance(node, Deriv):
        return _state(evaluate(node.arg, lookup, context)).derivative(node.order)
    if isinstance(node, NormalOrder):
        vals = [_state(evaluate(a, lookup, context)) for a in node.args]
        acc = vals[-1]
        for v in reversed(vals[:-1]):
            acc = v.nop(acc)
        return acc
    if isinstance(node, Product):
        return _state(evaluate(node.left, lookup, context)).nth(
            _state(evaluate(node.right, lookup, context)), node.n)
    if isinstance(node, Bracket):
        return _state(evaluate(node.left, lookup, context)).bracket(
            _state(evaluate(node.right, lookup, context)))
    if isinstance(node, Scaled):
        c = parse_scalar(node.scalar, context)
        return evaluate(node.arg, lookup, context) * c
    if isinstance(node, Sum):
        acc = None
        for sign, term in node.terms:
            v = evaluate(term, lookup, context)
            v = v if sign == 1 else -v
            acc = v if acc is None else acc + v
        return acc
    raise TypeError(f"not an expression node: {node!r}")


def _state(x) -> State:
    if isinstance(x, LambdaPolynomial):
        raise NameResolutionError("a λ-bracket cannot be used as a state")
    return x
