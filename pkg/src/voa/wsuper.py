"""Free-field data for sl(n+1|n) and the named W-side fields."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebras import alternating_gram, heisenberg, neutral_fermion, tensor
from .core import State, VertexAlgebra
from .scalar import GENERIC

__all__ = [
    "SlnnFreeFieldData", "free_field_data", "n2_generators", "w32_generators",
    "derived_fields", "OpeRelation", "w_side_relations", "verify_ope_table", "RelationResult",
]


@dataclass(frozen=True)
class SlnnFreeFieldData:
    """Heisenberg and fermion data for sl(n+1|n) with the alternating pairing."""
    n: int
    algebra: VertexAlgebra = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return 2 * self.n

    def alpha(self, i: int) -> State:
        return self.algebra.gen(f"a{i}")

    def phi(self, i: int) -> State:
        return self.algebra.gen(f"F{i}")

    def screenings(self):
        from .screening import sl_screenings
        return sl_screenings(self)


@lru_cache(maxsize=None)
def free_field_data(n: int) -> SlnnFreeFieldData:
    """H (x) Phi for sl(n+1|n); one shared algebra object per n."""
    if n < 1:
        raise ValueError("n must be positive")
    gram = alternating_gram(2 * n)
    heis = heisenberg(gram, "k+1", GENERIC)
    ferm = neutral_fermion(gram, GENERIC)
    alg = tensor(heis, ferm, name=f"free-sl({n + 1}|{n})")
    alg.meta["free_field_rank"] = n
    return SlnnFreeFieldData(n, alg)


def n2_generators(n: int) -> dict[str, State]:
    """G+(n), G-(n), H(n) = G+_(1)G-, L(n) = G+_(0)G- - DH/2."""
    data = free_field_data(n)
    alg = data.algebra
    t = alg.context.t
    k1 = t * t
    a, F = data.alpha, data.phi
    gp = alg.zero()
    gm = alg.zero()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            gp = gp + a(2 * i - 1).nop(F(2 * j))
        gp = gp + F(2 * i).derivative() * (i * k1)
        for j in range(1, i + 1):
            gm = gm + a(2 * i).nop(F(2 * j - 1))
        gm = gm + F(2 * i - 1).derivative() * ((n - i + 1) * k1)
    gp = gp / t
    gm = gm / t
    H = gp.nth(gm, 1)
    L = gp.nth(gm, 0) - H.derivative() * Fraction(1, 2)
    return {"G+": gp, "G-": gm, "H": H, "L": L}


def _nested(*states: State) -> State:
    """Right-nested normally ordered product :x1 (x2 (... xr)):."""
    acc = states[-1]
    for s in reversed(states[:-1]):
        acc = s.nop(acc)
    return acc


@lru_cache(maxsize=None)
def w32_generators() -> dict[str, State]:
    """H, S, G+, G- of the n = 2 free-field realization plus the derived fields."""
    data = free_field_data(2)
    alg = data.algebra
    k = alg.context.symbol("k")
    k1 = k + 1
    a = {i: data.alpha(i) for i in range(1, 5)}
    F = {i: data.phi(i) for i in range(1, 5)}
    D = lambda x: x.derivative()  # noqa: E731
    FF = lambda i, j: F[i].nop(F[j])  # noqa: E731

    H = 2 * a[1] - a[2] + a[3] - 2 * a[4] - FF(1, 2) - FF(1, 4) - FF(3, 4)
    Gp = a[1].nop(F[2]) + a[1].nop(F[4]) + a[3].nop(F[4]) + D(F[2]) * k1 + D(F[4]) * (2 * k1)
    Gm = a[2].nop(F[1]) + a[4].nop(F[1]) + a[4].nop(F[3]) + D(F[1]) * (2 * k1) + D(F[3]) * k1

    half = Fraction(1, 2)
    inner = (
        a[1].nop(a[1]) + a[1].nop(a[3]) - a[1].nop(a[4]) - half * a[2].nop(a[2])
        - 2 * a[2].nop(a[3]) + a[2].nop(a[4]) - half * a[3].nop(a[3]) + a[4].nop(a[4])
        - a[1].nop(FF(1, 2) + FF(1, 4) + FF(3, 4))
        - a[2].nop(FF(1, 2) + FF(1, 4) - 2 * FF(3, 4))
        - a[3].nop(2 * FF(1, 2) - FF(1, 4) - FF(3, 4))
        + a[4].nop(FF(1, 2) + FF(1, 4) + FF(3, 4))
        + 2 * _nested(F[1], F[2], F[3], F[4])
        - F[1].nop(D(F[2])) * (half * (4 * k + 3))
        + F[1].nop(D(F[4])) * (half * (2 * k + 3))
        + F[3].nop(D(F[4])) * (half * (2 * k + 3))
        - D(F[1]).nop(F[2]) * (half * (2 * k + 3))
        - D(F[1]).nop(F[4]) * (half * (2 * k + 3))
        + D(F[3]).nop(F[4]) * (half * (4 * k + 3))
        + D(a[1] - a[2] - a[3] + a[4]) * k1
    )
    S = inner * Fraction(3, 2)
    fields = {"H": H, "S": S, "G+": Gp, "G-": Gm}
    fields.update(derived_fields(H, S, Gp, Gm, k))
    return fields


def derived_fields(H: State, S: State, Gp: State, Gm: State, k) -> dict[str, State]:
    """L, W2, Q+, Q-, W3 built from H, S, G+, G- with the given level k."""
    k1 = k + 1
    L = Gp.nth(Gm, 0) / k1 - H.derivative() * Fraction(1, 2)
    W2 = L * Fraction(1, 2) + S
    Qp = Gp.nth(S, 0) + Gp.derivative() * Fraction(1, 4)
    Qm = Gm.nth(S, 0) + Gm.derivative() * Fraction(1, 4)
    H3 = _nested(H, H, H)
    W3 = Gp.nth(Qm, 0) - (2 * S.derivative() + L.derivative() + 6 * H.nop(L) - 2 * H3) * (k1 / 4)
    return {"L": L, "W2": W2, "Q+": Qp, "Q-": Qm, "W3": W3}


# -- OPE table -------------------------------------------------------------------------

@dataclass(frozen=True)
class OpeRelation:
    """Expected n-th product ``left_(n) right``; ``expected`` builds the State."""
    ident: str
    left: str
    right: str
    pole: int                 # n in left_(n) right
    description: str
    note: str = ""


@dataclass
class RelationResult:
    relation: OpeRelation
    passed: bool
    expected: str
    computed: str
    difference: str


def w_side_relations() -> list[OpeRelation]:
    """Every nonzero singular OPE coefficient among H, S, G+, G-.

    ``pole`` is the product index; poles not listed for a pair must vanish,
    which is checked separately by ``verify_ope_table``.
    """
    R = OpeRelation
    rels = [
        R("HH-2", "H", "H", 1, "H_(1)H = -2(3k+2)"),
        R("HH-1", "H", "H", 0, "H_(0)H = 0"),
        R("HS-2", "H", "S", 1, "H_(1)S = -(3/2)(2k+1)H"),
        R("HS-1", "H", "S", 0, "H_(0)S = 0"),
        R("HG+-1", "H", "G+", 0, "H_(0)G+ = G+"),
        R("HG--1", "H", "G-", 0, "H_(0)G- = -G-"),
        R("G+G--3", "G+", "G-", 2, "G+_(2)G- = -2(k+1)(3k+2)"),
        R("G+G--2", "G+", "G-", 1, "G+_(1)G- = (k+1)H"),
        R("G+G--1", "G+", "G-", 0, "G+_(0)G- = (k+1)(L + DH/2)",
          note="the weight-one field here is H, as forced by the definition of L"),
        R("G+S-2", "G+", "S", 1, "G+_(1)S = -(3/4)G+"),
        R("G+S-1", "G+", "S", 0, "G+_(0)S = Q+ - DG+/4"),
        R("G-S-2", "G-", "S", 1, "G-_(1)S = -(3/4)G-"),
        R("G-S-1", "G-", "S", 0, "G-_(0)S = Q- - DG-/4"),
        R("G+G+", "G+", "G+", -1, "G+(z)G+(w) ~ 0"),
        R("G-G-", "G-", "G-", -1, "G-(z)G-(w) ~ 0"),
        R("SS-4", "S", "S", 3, "S_(3)S = (9/4)(3k+2)(12k^2+23k+6)"),
        R("SS-3", "S", "S", 2, "S_(2)S = 0"),
        R("SS-2", "S", "S", 1, "S_(1)S = 3(5k+2)S - (9/2)(k+1)(4k+1)L - (9/4)(3k+1):HH:"),
        R("SS-1", "S", "S", 0, "S_(0)S = D(S_(1)S)/2"),
    ]
    return rels


def expected_product(ident: str, f: dict[str, State], k) -> State | None:
    """Expected State for a relation id, in terms of the fields ``f``.

    Returns None for the 'whole OPE vanishes' relations.
    """
    alg = f["H"].algebra
    vac = alg.vacuum()
    k1 = k + 1
    H, S, L = f["H"], f["S"], f["L"]
    ss2 = S * (3 * (5 * k + 2)) - L * (Fraction(9, 2) * k1 * (4 * k + 1)) - H.nop(H) * (Fraction(9, 4) * (3 * k + 1))
    table = {
        "HH-2": lambda: vac * (-2 * (3 * k + 2)),
        "HH-1": alg.zero,
        "HS-2": lambda: H * (Fraction(-3, 2) * (2 * k + 1)),
        "HS-1": alg.zero,
        "HG+-1": lambda: f["G+"],
        "HG--1": lambda: -f["G-"],
        "G+G--3": lambda: vac * (-2 * k1 * (3 * k + 2)),
        "G+G--2": lambda: H * k1,
        "G+G--1": lambda: (L + H.derivative() * Fraction(1, 2)) * k1,
        "G+S-2": lambda: f["G+"] * Fraction(-3, 4),
        "G+S-1": lambda: f["Q+"] - f["G+"].derivative() * Fraction(1, 4),
        "G-S-2": lambda: f["G-"] * Fraction(-3, 4),
        "G-S-1": lambda: f["Q-"] - f["G-"].derivative() * Fraction(1, 4),
        "SS-4": lambda: vac * (Fraction(9, 4) * (3 * k + 2) * (12 * k * k + 23 * k + 6)),
        "SS-3": alg.zero,
        "SS-2": lambda: ss2,
        "SS-1": lambda: ss2.derivative() * Fraction(1, 2),
    }
    maker = table.get(ident)
    return None if maker is None else maker()


def check_relations(fields: dict[str, State], k, relations=None) -> list[RelationResult]:
    """Evaluate each relation; also asserts no poles beyond those listed."""
    relations = relations or w_side_relations()
    out = []
    listed: dict[tuple[str, str], set[int]] = {}
    for rel in relations:
        listed.setdefault((rel.left, rel.right), set()).add(rel.pole)
    brackets = {}
    for pair in listed:
        brackets[pair] = fields[pair[0]].bracket(fields[pair[1]])
    for rel in relations:
        br = brackets[(rel.left, rel.right)]
        if rel.pole < 0:
            ok = br.is_zero()
            out.append(RelationResult(rel, ok, "0", br.render(), "" if ok else br.render()))
            continue
        exp = expected_product(rel.ident, fields, k)
        got = br[rel.pole]
        diff = got - exp
        out.append(RelationResult(rel, diff.is_zero(), exp.render(), got.render(),
                                  "" if diff.is_zero() else diff.render()))
    # no higher poles than listed
    for pair, poles in listed.items():
        if -1 in poles:
            continue
        extra = [n for n in brackets[pair].coeffs if n not in poles]
        rel = OpeRelation(f"{pair[0]}{pair[1]}-top", pair[0], pair[1], max(poles) + 1,
                          f"no poles of {pair[0]}(z){pair[1]}(w) beyond those listed")
        out.append(RelationResult(rel, not extra, "none", str(extra), ""))
    return out


def verify_ope_table() -> list[RelationResult]:
    fields = w32_generators()
    k = fields["H"].algebra.context.symbol("k")
    return check_relations(fields, k)
