"""Fock modules, free-field screening charges and their kernels.

A screening charge is the residue of ``e^mu(z) Phi(z)``, where the
exponential acts on the vacuum module as

    E^-(z) E^+(z),   E^-(z) = exp(sum_{n>0} mu_(-n) z^n / n),
                     E^+(z) = exp(-sum_{n>0} mu_(n) z^-n / n),

followed by the shift to the highest-weight vector ``v_mu``.  The zero-mode
factor ``z^{mu_(0)}`` is 1 on the vacuum module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import State, VertexAlgebra, _axpy
from .linalg import polynomial_rows, rank_over_function_field
from .scalar import Scalar

__all__ = [
    "FockWeight", "ScreeningCharge", "apply_screening", "kernel_check", "KernelReport",
    "sl_screenings", "graded_kernel_dimension", "weight_basis", "free_character",
    "WeightBoundError", "ScreeningError", "max_weight_bound", "screening_matrix",
    "sl_fermion_charges",
]


class WeightBoundError(ValueError):
    pass


class ScreeningError(ValueError):
    pass


@dataclass(frozen=True)
class FockWeight:
    """``mu = sum_i coefficients[i] * generators[i]`` for Heisenberg generators."""
    generators: tuple[str, ...]
    coefficients: tuple[Scalar, ...]
    label: str = "mu"

    def pairing(self, alg: VertexAlgebra, name: str) -> Scalar:
        """``B(name, mu)``: the eigenvalue of ``name_(0)`` on ``v_mu``."""
        br = alg.gen(name).bracket(self.state(alg))
        return br[1].terms.get((), Scalar(0))

    def state(self, alg: VertexAlgebra) -> State:
        out = alg.zero()
        for g, c in zip(self.generators, self.coefficients):
            out = out + alg.gen(g) * c
        return out

    def creation_terms(self, alg: VertexAlgebra) -> dict:
        """Terms of ``mu_(-1)|0>``."""
        return self.state(alg).terms

    def mode_terms(self, alg: VertexAlgebra):
        return [(alg.index[g], c) for g, c in zip(self.generators, self.coefficients) if c]


@dataclass(frozen=True)
class ScreeningCharge:
    mu: FockWeight
    dressing: str
    index: int


def sl_screenings(data) -> list[ScreeningCharge]:
    """``Q_i`` with ``mu_i = -alpha_i/(k+1)`` and dressing ``Phi_i``."""
    alg = data.algebra
    k1 = alg.context.symbol("k") + 1
    out = []
    for i in range(1, 2 * data.n + 1):
        mu = FockWeight((f"a{i}",), (-1 / k1,), f"mu{i}")
        out.append(ScreeningCharge(mu, f"F{i}", i))
    return out


def _mu_apply(alg: VertexAlgebra, modes, n: int, terms: dict) -> dict:
    out: dict = {}
    for g, c in modes:
        _axpy(out, alg.apply_mode_terms(g, n, terms), c)
    return out


def _raise(alg: VertexAlgebra, modes, a: int, x: dict) -> dict:
    """Coefficient of z^a in E^-(z) applied to x; a R_a = sum_n mu_(-n) R_(a-n)."""
    seq = [x]
    for m in range(1, a + 1):
        acc: dict = {}
        for n in range(1, m + 1):
            _axpy(acc, _mu_apply(alg, modes, -n, seq[m - n]), Fraction(1, m))
        seq.append(acc)
    return seq[a]


def _screen_terms(alg: VertexAlgebra, Q: ScreeningCharge, terms: dict) -> dict:
    if not terms:
        return {}
    modes = Q.mu.mode_terms(alg)
    phi = alg.index[Q.dressing]
    top = max(alg.mono_weight2(m) for m in terms) // 2 + 1
    # P_b = coefficient of z^-b in E^+(z) applied to the input
    P = [terms]
    for b in range(1, top + 1):
        acc: dict = {}
        for n in range(1, b + 1):
            _axpy(acc, _mu_apply(alg, modes, n, P[b - n]), Fraction(-1, b))
        P.append(acc)
    out: dict = {}
    for b, Pb in enumerate(P):
        if not Pb:
            continue
        w2 = max(alg.mono_weight2(m) for m in Pb)
        for n in range(-b, (w2 + alg.w2[phi]) // 2):
            X = alg.apply_mode_terms(phi, n, Pb)
            if X:
                _axpy(out, _raise(alg, modes, n + b, X), 1)
    return out


def apply_screening(Q: ScreeningCharge, v: State) -> State:
    """``Q(v)`` as a state of the Fock module tagged ``Q.mu``."""
    if v.tag is not None:
        raise ScreeningError("screenings act on the vacuum module only")
    alg = v.algebra
    if Q.dressing not in alg.index or alg.parity[alg.index[Q.dressing]] != 1:
        raise ScreeningError(f"dressing {Q.dressing!r} must be an odd generator")
    return State(alg, _screen_terms(alg, Q, v.terms), Q.mu)


@dataclass
class KernelReport:
    passes: bool
    witnesses: list[tuple[int, str]]


def kernel_check(Qs, A: State) -> KernelReport:
    witnesses = []
    for Q in Qs:
        img = apply_screening(Q, A)
        if img:
            mono = min(img.terms, key=lambda m: (len(m), m))
            first = State(img.algebra, {mono: img.terms[mono]}, img.tag)
            witnesses.append((Q.index, first.render()))
    return KernelReport(not witnesses, witnesses)


# -- graded kernel dimensions -----------------------------------------------------------

def max_weight_bound() -> Fraction:
    from .settings import Settings
    return Settings.from_env().max_weight


def weight_basis(alg: VertexAlgebra, weight2: int) -> list[tuple]:
    """All PBW monomials of twice-weight ``weight2`` (no repeated odd letters)."""
    letters = []
    for g in alg.gens:
        base = g.weight2
        m = -1
        while base - 2 * m - 2 <= weight2:
            if base - 2 * m - 2 > 0:
                letters.append((g.ordinal, m))
            m -= 1
    letters.sort()
    w = {L: alg.w2[L[0]] - 2 * L[1] - 2 for L in letters}
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(letters)):
            L = letters[idx]
            if w[L] > remaining:
                continue
            odd = alg.parity[L[0]]
            acc.append(L)
            rec(idx + 1 if odd else idx, remaining - w[L], acc)
            acc.pop()

    rec(0, weight2, [])
    return sorted(out)


def _charge(alg, mono, charges):
    return sum(charges.get(g, 0) for g, _ in mono)


def screening_matrix(Qs, alg: VertexAlgebra, basis):
    """Rows indexed by (screening, target monomial); columns by basis index."""
    rows: dict = {}
    for col, mono in enumerate(basis):
        for Q in Qs:
            img = _screen_terms(alg, Q, {mono: Scalar(1)})
            for m, c in img.items():
                rows.setdefault((Q.index, m), {})[col] = c
    return [rows[k] for k in sorted(rows)]


def graded_kernel_dimension(Qs, weight, alg: VertexAlgebra | None = None,
                            fermion_charges: dict[str, int] | None = None) -> int:
    """Dimension of the joint kernel at the given conformal weight.

    With ``fermion_charges`` (generator name -> integer charge preserved up to
    a uniform shift by every screening) the system splits into sectors.
    """
    weight = Fraction(weight)
    bound = max_weight_bound()
    if weight > bound:
        raise WeightBoundError(f"weight {weight} exceeds the configured bound {bound}")
    if weight < 0 or (2 * weight).denominator != 1:
        raise ValueError("weight must be a non-negative half-integer")
    if alg is None:
        from .wsuper import free_field_data
        alg = free_field_data(2).algebra
    basis = weight_basis(alg, int(2 * weight))
    if not basis:
        return 0
    charges = {alg.index[n]: c for n, c in (fermion_charges or {}).items()}
    sectors: dict[int, list] = {}
    for mono in basis:
        sectors.setdefault(_charge(alg, mono, charges), []).append(mono)
    nullity = 0
    for _, monos in sorted(sectors.items()):
        rows = screening_matrix(Qs, alg, monos)
        rank = rank_over_function_field(polynomial_rows(rows))
        nullity += len(monos) - rank
    return nullity


def sl_fermion_charges(n: int) -> dict[str, int]:
    """Charge +1 on odd-index fermions and -1 on even-index ones.

    Each ``Q_i`` contains exactly one fermion mode, so it shifts the charge
    by a fixed amount and maps distinct sectors to distinct sectors.
    """
    return {f"F{i}": (1 if i % 2 else -1) for i in range(1, 2 * n + 1)}


def free_character(even_weights, odd_weights, max_weight2: int) -> list[int]:
    """Coefficients in q^(1/2) of the free character, up to ``max_weight2``."""
    series = [0] * (max_weight2 + 1)
    series[0] = 1
    for w in even_weights:
        step = int(2 * Fraction(w))
        for start in range(step, max_weight2 + 1, 2):
            for i in range(start, max_weight2 + 1):      # multiply by 1/(1 - q^start)
                series[i] += series[i - start]
    for w in odd_weights:
        step = int(2 * Fraction(w))
        for start in range(step, max_weight2 + 1, 2):
            for i in range(max_weight2, start - 1, -1):  # multiply by (1 + q^start)
                series[i] += series[i - start]
    return series
