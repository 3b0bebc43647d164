"""The coset of V^{l+1}(gl_n) inside V^l(sl_{n+1}) (x) E(n), its n = 2
generators, the W-side/coset-side OPE comparison and the large-level limit."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebras import affine, bc_system, heisenberg, sl_lie_data, tensor
from .core import State, VertexAlgebra
from .linalg import decompose
from .scalar import GENERIC, LIMIT, ParameterContext, PoleError, Scalar
from .wsuper import derived_fields, w32_generators, w_side_relations

__all__ = [
    "DiagonalEmbedding", "diagonal_embedding", "coset_algebra", "coset_membership",
    "MembershipReport", "coset_generators_n2", "match_ope_tables", "MatchRow",
    "limit_fields", "invariant_limit_targets", "LimitError", "limit_values",
    "embedding_closure", "structure_constants", "LIMIT_PAIRS", "LIMIT_LETTERS",
]


class LimitError(ValueError):
    def __init__(self, message, field=None, term=None):
        super().__init__(message)
        self.field = field
        self.term = term


@lru_cache(maxsize=None)
def coset_algebra(n: int, context_name: str = "generic") -> VertexAlgebra:
    """V^l(sl_{n+1}) (x) E(n); in the limit context the currents are rescaled by s."""
    ctx = GENERIC if context_name == "generic" else LIMIT
    rescale = None if ctx is GENERIC else ctx.symbol("s")
    aff = affine(sl_lie_data(n + 1), "l", ctx, rescale=rescale)
    alg = tensor(aff, bc_system(n, ctx), name=f"sl{n + 1}+bc{n}-{ctx.name}")
    alg.meta["coset_rank"] = n
    alg.meta["current_scale"] = 1 if rescale is None else 1 / rescale
    return alg


def _current(alg: VertexAlgebra, name: str) -> State:
    """The unrescaled current ``u``; equals ``u~ / s`` in the limit context."""
    return alg.gen(name) * alg.meta["current_scale"]


def _bc(alg, i, j) -> State:
    return alg.gen(f"b{i}").nop(alg.gen(f"c{j}"))


@dataclass(frozen=True)
class DiagonalEmbedding:
    n: int
    algebra: VertexAlgebra
    images: tuple[tuple[str, State], ...]

    def image(self, name: str) -> State:
        return dict(self.images)[name]


def diagonal_embedding(n: int, context_name: str = "generic") -> DiagonalEmbedding:
    """Images of the gl_n basis: u (x) 1 + 1 (x) (bc bilinear).

    ``e[i,j] -> e[i,j] + :b_i c_j:``, ``h[i] -> h[i] + :b_i c_i: - :b_(i+1) c_(i+1):``
    and the identity ``I -> varpi_n + sum_i :b_i c_i:`` with
    ``varpi_n = sum_i i h[i] / (n+1)``.
    """
    alg = coset_algebra(n, context_name)
    cur = lambda name: _current(alg, name)  # noqa: E731
    images = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                images.append((f"e[{i},{j}]", cur(f"e[{i},{j}]") + _bc(alg, i, j)))
    for i in range(1, n):
        images.append((f"h[{i}]", cur(f"h[{i}]") + _bc(alg, i, i) - _bc(alg, i + 1, i + 1)))
    varpi = alg.zero()
    for i in range(1, n + 1):
        varpi = varpi + cur(f"h[{i}]") * i
    ident = varpi * Fraction(1, n + 1)
    for i in range(1, n + 1):
        ident = ident + _bc(alg, i, i)
    images.append(("I", ident))
    return DiagonalEmbedding(n, alg, tuple(images))


def embedding_closure(emb: DiagonalEmbedding) -> list[tuple[str, str, bool, str]]:
    """Check the images close on gl_n with the sl_n part at level l+1.

    Returns rows ``(u, v, ok, detail)`` for every ordered pair of images.
    """
    alg = emb.algebra
    n = emb.n
    level = alg.context.symbol("l") + 1
    lie = sl_lie_data(n) if n > 1 else None
    names = [x for x, _ in emb.images]
    imgs = dict(emb.images)
    rows = []
    for x in names:
        for y in names:
            br = imgs[x].bracket(imgs[y])
            if x == "I" or y == "I":
                # the identity is central: no simple pole, constant double pole
                ok = br[0].is_zero() and all(not m for m in br[1].terms) and br.degree() <= 1
                if x != y:
                    ok = ok and br.is_zero()
                rows.append((x, y, ok, br.render()))
                continue
            i, j = lie.basis.index(x), lie.basis.index(y)
            exp0 = alg.zero()
            for m, c in enumerate(lie.bracket(i, j)):
                if c:
                    exp0 = exp0 + imgs[lie.basis[m]] * c
            exp1 = alg.vacuum() * (level * lie.form(i, j))
            ok = br[0] == exp0 and br[1] == exp1 and br.degree() <= 1
            rows.append((x, y, ok, br.render()))
    return rows


@dataclass
class MembershipReport:
    passes: bool
    failures: list[tuple[str, int, str]]


def coset_membership(emb: DiagonalEmbedding, A: State) -> MembershipReport:
    """A lies in the commutant iff every ``u_(n) A``, n >= 0, vanishes."""
    failures = []
    for name, u in emb.images:
        br = u.bracket(A)
        for n, X in br.coeffs.items():
            failures.append((name, n, X.render()))
    return MembershipReport(not failures, failures)


def _nested(*states: State) -> State:
    acc = states[-1]
    for s in reversed(states[:-1]):
        acc = s.nop(acc)
    return acc


def coset_generators_n2(context_name: str = "generic") -> dict[str, State]:
    """H^, S^, G+^, G-^ and the derived L^, W2^, W3^, Q+^, Q-^.

    The Cartan elements entering H^ and S^ are ``h1 = e11 - e22`` and
    ``h13 = e11 - e33`` (the sum of the two simple coroots).
    """
    return dict(_coset_generators_n2(context_name))


@lru_cache(maxsize=None)
def _coset_generators_n2(context_name: str):
    alg = coset_algebra(2, context_name)
    ctx = alg.context
    l = ctx.symbol("l")
    k = ctx.symbol("k")
    e = lambda i, j: _current(alg, f"e[{i},{j}]")  # noqa: E731
    h1 = _current(alg, "h[1]")
    h13 = h1 + _current(alg, "h[2]")
    b = lambda i: alg.gen(f"b{i}")  # noqa: E731
    c = lambda i: alg.gen(f"c{i}")  # noqa: E731
    D = lambda x: x.derivative()  # noqa: E731
    half = Fraction(1, 2)

    H = (h1 - 2 * h13 + l * _bc(alg, 1, 1) + l * _bc(alg, 2, 2)) / (l + 3)
    Gp = (e(3, 1).nop(b(1)) + e(3, 2).nop(b(2))) / (l + 3)
    Gm = (e(1, 3).nop(c(1)) + e(2, 3).nop(c(2))) / (l + 3)
    inner = (
        half * h1.nop(h1) + h1.nop(h13) - h13.nop(h13)
        + 3 * e(1, 2).nop(e(2, 1)) - e(2, 3).nop(e(3, 2)) - e(1, 3).nop(e(3, 1))
        - (2 * l + 3) * _nested(h1, b(1), c(1)) + (l + 2) * _nested(h1, b(2), c(2))
        + (l + 1) * _nested(h13, b(1), c(1)) + (l + 1) * _nested(h13, b(2), c(2))
        - (3 * l + 5) * _nested(e(1, 2), b(2), c(1)) - (3 * l + 5) * _nested(e(2, 1), b(1), c(2))
        + l * (2 * l + 3) * _nested(b(1), b(2), c(1), c(2))
        - half * l * (l + 2) * b(1).nop(D(c(1)))
        - half * l * (l + 2) * b(2).nop(D(c(2)))
        + half * l * (l + 2) * D(b(1)).nop(c(1))
        + half * l * (l + 2) * D(b(2)).nop(c(2))
        - 2 * D(h1) + D(h13)
    )
    S = inner * (Scalar(Fraction(-3, 2)) / ((l + 3) * (l + 3)))
    fields = {"H^": H, "S^": S, "G+^": Gp, "G-^": Gm}
    derived = derived_fields(H, S, Gp, Gm, k)
    fields.update({f"{name}^": v for name, v in derived.items()})
    return tuple(fields.items())


# -- OPE matching --------------------------------------------------------------------

def _spanning_set(f: dict[str, State], suffix: str = "") -> dict[str, State]:
    """Named states the singular parts of the H, S, G+, G- OPEs expand in."""
    g = lambda x: f[x + suffix]  # noqa: E731
    H, S, L = g("H"), g("S"), g("L")
    alg = H.algebra
    return {
        "1": alg.vacuum(), "H": H, "G+": g("G+"), "G-": g("G-"), "L": L, "S": S,
        "DH": H.derivative(), "HH": H.nop(H), "Q+": g("Q+"), "Q-": g("Q-"),
        "DG+": g("G+").derivative(), "DG-": g("G-").derivative(),
        "DS": S.derivative(), "DL": L.derivative(), "D(HH)": H.nop(H).derivative(),
        "D2H": H.derivative(2),
    }


def structure_constants(X: State, span: dict[str, State]) -> dict[str, Scalar] | None:
    """Coefficients of X on the named spanning states (None if not in the span)."""
    if X.is_zero():
        return {}
    w = X.weights2()
    names = [k for k, v in span.items() if v.weights2() == w]
    sol = decompose(X, [span[k] for k in names])
    if sol is None:
        return None
    return {k: c for k, c in zip(names, sol) if c}


@dataclass
class MatchRow:
    ident: str
    passed: bool
    w_side: str
    coset_side: str


def _fmt_constants(consts, ctx: ParameterContext) -> str:
    if consts is None:
        return "not in span"
    if not consts:
        return "0"
    return ", ".join(f"{k}: {ctx.render(v, 'k')}" for k, v in sorted(consts.items()))


def match_ope_tables() -> list[MatchRow]:
    """Compare every structure constant of the generator OPEs on both sides.

    Each singular coefficient is expanded on the named states of its own side;
    the two coefficient dictionaries must agree as elements of Q(t).
    """
    wf = w32_generators()
    cf = coset_generators_n2("generic")
    wspan, cspan = _spanning_set(wf), _spanning_set(cf, "^")
    rows = []
    pairs = []
    for rel in w_side_relations():
        if (rel.left, rel.right) not in pairs:
            pairs.append((rel.left, rel.right))
    ctx = GENERIC
    for left, right in pairs:
        wb = wf[left].bracket(wf[right])
        cb = cf[left + "^"].bracket(cf[right + "^"])
        top = max(wb.degree(), cb.degree())
        if top < 0:
            rows.append(MatchRow(f"{left}{right}", True, "0", "0"))
            continue
        for n in range(top, -1, -1):
            wc = structure_constants(wb[n], wspan)
            cc = structure_constants(cb[n], cspan)
            ok = wc is not None and cc is not None and wc == cc
            rows.append(MatchRow(f"{left}{right}-{n + 1}", ok, _fmt_constants(wc, ctx),
                                 _fmt_constants(cc, ctx)))
    return rows


# -- large-level limit ----------------------------------------------------------------------

LIMIT_LETTERS = {"e[1,3]": "A1", "e[2,3]": "A2", "e[3,1]": "Abar1", "e[3,2]": "Abar2"}


def limit_fields() -> dict[str, State]:
    """The eight combinations of coset fields whose large-level limit is taken.

    Built in the limit context (l = s^-2) from the rescaled currents.
    """
    f = coset_generators_n2("limit")
    alg = f["H^"].algebra
    ctx = alg.context
    l = ctx.symbol("l")
    rl = ctx.symbol("sqrtl")
    H, L, W2, W3 = f["H^"], f["L^"], f["W2^"], f["W3^"]
    Gp, Gm, Qp, Qm = f["G+^"], f["G-^"], f["Q+^"], f["Q-^"]
    F = Fraction
    HH = H.nop(H)
    out = {
        "J0": H,
        "J1": W2 * F(2, 9) - L * F(1, 9) - HH * F(1, 3) + H.derivative() * F(1, 2),
        "Omega0": L * F(8, 9) + W2 * F(2, 9) - HH * F(1, 3),
        "Omega1": (W3 * (2 * l / 9) - H.nop(L) * F(2, 9) + L.derivative() * F(1, 9)
                   - H.derivative().nop(H) * F(1, 3) + _nested(H, H, H) * F(1, 18)
                   - H.derivative(2) * F(1, 9) + W2.derivative() * F(1, 9)
                   + Gp.nop(Gm) * (2 * l / 3) - H.nop(W2) * F(2, 9)),
        "N0": Gp * rl,
        "N1": Qp * (-2 * rl / 9) - H.nop(Gp) * (2 * rl / 3) + Gp.derivative() * (8 * rl / 9),
        "M0": Gm * rl,
        "M1": Qm * (2 * rl / 9) - H.nop(Gm) * (2 * rl / 3) + Gm.derivative() * (rl / 9),
    }
    return out


@lru_cache(maxsize=None)
def _target_algebra() -> VertexAlgebra:
    heis = heisenberg([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], 1, LIMIT,
                      names=["A1", "A2", "Abar1", "Abar2"], name="H4")
    return tensor(heis, bc_system(2, LIMIT), name="H4+bc2")


def invariant_limit_targets() -> dict[str, State]:
    """j^k, w^k, nu^k, mu^k (k = 0, 1) in H(4) (x) E(2)."""
    alg = _target_algebra()
    g = alg.gen
    out = {}
    for d in (0, 1):
        out[f"j{d}"] = g("b1").nop(g("c1", d)) + g("b2").nop(g("c2", d))
        out[f"w{d}"] = g("A1").nop(g("Abar1", d)) + g("A2").nop(g("Abar2", d))
        out[f"nu{d}"] = g("b1").nop(g("Abar1", d)) + g("b2").nop(g("Abar2", d))
        out[f"mu{d}"] = g("A1").nop(g("c1", d)) + g("A2").nop(g("c2", d))
    return out


def _evaluate_at_zero(name: str, X: State) -> State:
    """Substitute s = 0 and transport to H(4) (x) E(2)."""
    src = X.algebra
    tgt = _target_algebra()
    gmap = {}
    for g in src.gens:
        gmap[g.ordinal] = tgt.index.get(LIMIT_LETTERS.get(g.name, g.name))
    terms = {}
    for mono, c in X.terms.items():
        if c.valuation() < 0:
            raise LimitError(f"{name}: coefficient {c} has a pole at s = 0", name,
                             State(src, {mono: c}).render())
        try:
            v = c.substitute(0)
        except PoleError as exc:
            raise LimitError(f"{name}: {exc}", name, State(src, {mono: c}).render()) from None
        if not v:
            continue
        letters = []
        for g, m in mono:
            t = gmap[g]
            if t is None:
                raise LimitError(f"{name}: letter {src.gens[g].name} survives the limit", name,
                                 State(src, {mono: c}).render())
            letters.append((t, m))
        terms[tuple(letters)] = v
    return State(tgt, terms)


def limit_values() -> dict[str, State]:
    """s = 0 values of the eight limit fields (raises LimitError on a pole)."""
    return {name: _evaluate_at_zero(name, X) for name, X in limit_fields().items()}


LIMIT_PAIRS = {"J0": "j0", "J1": "j1", "Omega0": "w0", "Omega1": "w1",
               "N0": "nu0", "N1": "nu1", "M0": "mu0", "M1": "mu1"}
