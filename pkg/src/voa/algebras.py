"""Concrete vertex superalgebras: free fields, affine currents, tensor products."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from flint import fmpq, fmpq_mat

from .core import BracketSpecError, State, VertexAlgebra
from .scalar import GENERIC, ParameterContext, context_for

__all__ = [
    "LieData", "sl_lie_data", "heisenberg", "neutral_fermion", "bc_system", "affine",
    "tensor", "sugawara", "bc_virasoro", "CriticalLevelError", "algebra_from_config",
    "config_to_json", "alternating_gram", "ConfigError",
]


class CriticalLevelError(ValueError):
    pass


class ConfigError(ValueError):
    pass


def alternating_gram(size: int) -> list[list[int]]:
    """Upper-triangular pairing (-1)^(i+1) on the superdiagonal, 1-based i."""
    g = [[0] * size for _ in range(size)]
    for i in range(1, size):
        g[i - 1][i] = (-1) ** (i + 1)
    return g


def _upper_pairs(gram, names, symmetric_fill=True):
    """Pairs (i, j), i <= j, with nonzero entries; lower entries must agree."""
    size = len(gram)
    if any(len(row) != size for row in gram):
        raise BracketSpecError("Gram matrix must be square")
    out = []
    for i in range(size):
        for j in range(i, size):
            v = gram[i][j]
            w = gram[j][i]
            if i != j and v != w and w != 0 and v != 0:
                raise BracketSpecError(f"Gram matrix not symmetric at ({i}, {j})")
            v = v if v != 0 else w
            if v != 0:
                out.append((names[i], names[j], v))
    return out


def _raw(x):
    """Config value as given, so documents round-trip unchanged."""
    return x if isinstance(x, (str, int)) and not isinstance(x, bool) else str(x)


def heisenberg(gram, scale="k+1", context: ParameterContext = GENERIC, prefix="a",
               name="heisenberg", names=None) -> VertexAlgebra:
    """Weight-one bosons with ``[a_i λ a_j] = λ * scale * gram[i][j]``."""
    size = len(gram)
    raw = {"type": "heisenberg", "gram": [[_raw(x) for x in row] for row in gram],
           "scale": _raw(scale), "prefix": prefix}
    names = names or [f"{prefix}{i + 1}" for i in range(size)]
    scale = context.scalar(scale)
    gram = [[context.scalar(x) for x in row] for row in gram]
    gens = [(n, 0, 2) for n in names]
    brackets = {(x, y): {1: [(v * scale, None, 0)]} for x, y, v in _upper_pairs(gram, names)}
    alg = VertexAlgebra(name, gens, brackets, context)
    alg.meta["config"] = raw
    return alg


def neutral_fermion(gram, context: ParameterContext = GENERIC, prefix="F",
                    name="fermion", names=None) -> VertexAlgebra:
    """Weight-1/2 odd fields with ``[F_i λ F_j] = gram[i][j]``."""
    size = len(gram)
    raw = {"type": "fermion", "gram": [[_raw(x) for x in row] for row in gram], "prefix": prefix}
    names = names or [f"{prefix}{i + 1}" for i in range(size)]
    gram = [[context.scalar(x) for x in row] for row in gram]
    gens = [(n, 1, 1) for n in names]
    brackets = {(x, y): {0: [(v, None, 0)]} for x, y, v in _upper_pairs(gram, names)}
    alg = VertexAlgebra(name, gens, brackets, context)
    alg.meta["config"] = raw
    return alg


def bc_system(n: int, context: ParameterContext = GENERIC, name="bc") -> VertexAlgebra:
    """Rank-n bc system b1..bn, c1..cn with ``[b_i λ c_j] = δ_ij``."""
    if n < 1:
        raise BracketSpecError("bc system needs n >= 1")
    gens = [(f"b{i}", 1, 1) for i in range(1, n + 1)] + [(f"c{i}", 1, 1) for i in range(1, n + 1)]
    brackets = {(f"b{i}", f"c{i}"): {0: [(1, None, 0)]} for i in range(1, n + 1)}
    alg = VertexAlgebra(name, gens, brackets, context)
    alg.meta["config"] = {"type": "bc", "n": n}
    alg.meta["bc_rank"] = n
    return alg


def bc_virasoro(alg: VertexAlgebra, n: int | None = None) -> State:
    """``-1/2 sum_i (:b_i Dc_i: - :(Db_i) c_i:)``, central charge n."""
    n = n or alg.meta.get("bc_rank")
    L = alg.zero()
    for i in range(1, n + 1):
        b, c = alg.gen(f"b{i}"), alg.gen(f"c{i}")
        L = L + b.nop(c.derivative()) - b.derivative().nop(c)
    return L * Fraction(-1, 2)


# -- Lie algebra data -----------------------------------------------------------------

@dataclass(frozen=True)
class LieData:
    """A matrix Lie algebra with a basis, structure constants and invariant form."""
    name: str
    basis: tuple[str, ...]
    matrices: tuple            # tuple of n x n Fraction matrices (tuples of tuples)
    dual_coxeter: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, mat) -> list[Fraction]:
        """Coordinates of a matrix in the basis (must lie in the span)."""
        return _solve_span([m for m in self.matrices], mat)

    def bracket(self, i: int, j: int) -> list[Fraction]:
        a, b = self.matrices[i], self.matrices[j]
        return self.coordinates(_sub(_mul(a, b), _mul(b, a)))

    def form(self, i: int, j: int) -> Fraction:
        return _trace(_mul(self.matrices[i], self.matrices[j]))

    def gram(self):
        return [[self.form(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def check(self):
        """Antisymmetry, Jacobi and invariance of the trace form."""
        d = self.dim
        for i, j in iproduct(range(d), repeat=2):
            if [-x for x in self.bracket(j, i)] != self.bracket(i, j):
                raise BracketSpecError("structure constants not antisymmetric")
        for i, j, k in iproduct(range(d), repeat=3):
            lhs = sum(c * self.form(m, k) for m, c in enumerate(self.bracket(i, j)))
            rhs = sum(c * self.form(i, m) for m, c in enumerate(self.bracket(j, k)))
            if lhs != rhs:
                raise BracketSpecError("form is not invariant")
        return True


def _mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _trace(a):
    return sum(a[i][i] for i in range(len(a)))


def _solve_span(mats, target) -> list[Fraction]:
    n = len(target)
    flat = [[m[i][j] for m in mats] for i in range(n) for j in range(n)]
    rhs = [target[i][j] for i in range(n) for j in range(n)]
    # least-squares-free exact solve: normal equations on the (full column rank) system
    A = fmpq_mat(len(flat), len(mats), [fmpq(x.numerator, x.denominator) for row in flat for x in row])
    b = fmpq_mat(len(rhs), 1, [fmpq(x.numerator, x.denominator) for x in rhs])
    At = A.transpose()
    sol = (At * A).solve(At * b)
    out = [Fraction(int(sol[i, 0].p), int(sol[i, 0].q)) for i in range(len(mats))]
    check = tuple(tuple(sum(c * m[i][j] for c, m in zip(out, mats)) for j in range(n)) for i in range(n))
    if check != tuple(tuple(Fraction(x) for x in row) for row in target):
        raise BracketSpecError("matrix is not in the span of the basis")
    return out


def _unit(n, i, j):
    return tuple(tuple(Fraction(1 if (r, c) == (i, j) else 0) for c in range(n)) for r in range(n))


def sl_lie_data(n: int) -> LieData:
    """sl_n with basis e[i,j] (i != j, 1-based) and h[i] = e_ii - e_(i+1)(i+1)."""
    names, mats = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                names.append(f"e[{i + 1},{j + 1}]")
                mats.append(_unit(n, i, j))
    for i in range(n - 1):
        names.append(f"h[{i + 1}]")
        mats.append(_sub(_unit(n, i, i), _unit(n, i + 1, i + 1)))
    return LieData(f"sl{n}", tuple(names), tuple(mats), n)


def affine(lie: LieData, level="l", context: ParameterContext = GENERIC, rescale=None,
           name=None) -> VertexAlgebra:
    """Currents ``[u λ v] = [u, v] + λ level (u|v)``.

    With ``rescale=s`` the generators are ``u~ = s u`` so that
    ``[u~ λ v~] = s [u,v]~ + λ s^2 level (u|v)``.
    """
    raw = {"type": "affine", "lie": lie.name, "level": _raw(level)}
    if rescale is not None:
        raw["rescale"] = _raw(rescale)
    level = context.scalar(level)
    s = context.scalar(1 if rescale is None else rescale)
    gens = [(x, 0, 2) for x in lie.basis]
    brackets = {}
    d = lie.dim
    for i in range(d):
        for j in range(i, d):
            entry = {}
            lin = [(s * c, lie.basis[m], 0) for m, c in enumerate(lie.bracket(i, j)) if c]
            if lin:
                entry[0] = lin
            f = lie.form(i, j)
            if f:
                entry[1] = [(s * s * level * f, None, 0)]
            if entry:
                brackets[(lie.basis[i], lie.basis[j])] = entry
    alg = VertexAlgebra(name or f"affine-{lie.name}", gens, brackets, context)
    alg.meta["lie"] = lie
    alg.meta["level"] = level
    alg.meta["config"] = raw
    return alg


def tensor(A: VertexAlgebra, B: VertexAlgebra, name=None) -> VertexAlgebra:
    """Tensor product; generators of A come first in the PBW order."""
    if A.context is not B.context and A.context.name != B.context.name:
        raise BracketSpecError("tensor factors use different parameter contexts")
    clash = set(A.index) & set(B.index)
    if clash:
        raise BracketSpecError(f"generator names collide: {sorted(clash)}")
    gens = [(g.name, g.parity, g.weight2, g.algebra) for g in A.gens + B.gens]
    brackets = dict(A.raw_brackets)
    brackets.update(B.raw_brackets)
    alg = VertexAlgebra(name or f"{A.name}*{B.name}", gens, brackets, A.context)
    alg.meta.update({k: v for k, v in B.meta.items() if k != "config"})
    alg.meta.update({k: v for k, v in A.meta.items() if k != "config"})
    alg.meta["config"] = {"type": "tensor", "factors": [A.meta.get("config"), B.meta.get("config")]}
    return alg


def sugawara(alg: VertexAlgebra, lie: LieData | None = None, level=None) -> State:
    """Sugawara vector ``1/(2(level + h)) sum :u_a u^a:`` over a dual basis."""
    lie = lie or alg.meta["lie"]
    level = alg.scalar(alg.meta["level"] if level is None else level)
    shift = level + lie.dual_coxeter
    if not shift:
        raise CriticalLevelError(f"critical level {level} for {lie.name}")
    gram = lie.gram()
    d = lie.dim
    M = fmpq_mat(d, d, [fmpq(x.numerator, x.denominator) for row in gram for x in row])
    inv = M.inv()
    L = alg.zero()
    for a in range(d):
        ua = alg.gen(lie.basis[a])
        for b in range(d):
            c = inv[a, b]
            if c != 0:
                L = L + ua.nop(alg.gen(lie.basis[b])) * Fraction(int(c.p), int(c.q))
    return L / (2 * shift)


# -- JSON configuration -------------------------------------------------------------------

def algebra_from_config(doc, context: ParameterContext | None = None) -> VertexAlgebra:
    """Build an algebra from a JSON document (dict or string)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, dict) or "type" not in doc:
        raise ConfigError("algebra config must be an object with a 'type' field")
    ctx = context or context_for(doc.get("context", "generic"))
    kind = doc["type"]
    try:
        if kind == "heisenberg":
            alg = heisenberg(doc["gram"], doc.get("scale", "k+1"), ctx, doc.get("prefix", "a"))
        elif kind == "fermion":
            alg = neutral_fermion(doc["gram"], ctx, doc.get("prefix", "F"))
        elif kind == "bc":
            alg = bc_system(int(doc["n"]), ctx)
        elif kind == "affine":
            lie = doc["lie"]
            if not (lie.startswith("sl") and lie[2:].isdigit()):
                raise ConfigError(f"unsupported Lie algebra {lie!r}")
            alg = affine(sl_lie_data(int(lie[2:])), doc.get("level", "l"), ctx, doc.get("rescale"))
        elif kind == "tensor":
            factors = [algebra_from_config(f, ctx) for f in doc["factors"]]
            if len(factors) < 2:
                raise ConfigError("tensor needs at least two factors")
            alg = factors[0]
            for f in factors[1:]:
                alg = tensor(alg, f)
            alg.meta["config"] = {"type": "tensor", "factors": [f.meta["config"] for f in factors]}
        else:
            raise ConfigError(f"unknown algebra type {kind!r}")
    except KeyError as exc:
        raise ConfigError(f"missing field {exc.args[0]!r} in {kind} config") from None
    if "context" in doc:
        alg.meta["config"] = {**alg.meta["config"], "context": doc["context"]}
    if "screenings" in doc:
        alg.meta["config"]["screenings"] = doc["screenings"]
    return alg


def config_to_json(alg: VertexAlgebra) -> str:
    """Canonical JSON text of the configuration an algebra was built from."""
    return json.dumps(alg.meta["config"], sort_keys=True, separators=(",", ":"))
