"""Named verification suites and their machine-readable reports."""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

from .scalar import GENERIC, Scalar

__all__ = ["CheckRecord", "SuiteReport", "Check", "SUITES", "run_suite", "report_schema",
           "validate_report", "W_GENERATOR_WEIGHTS"]

# weights of the strong generators H, G+, G-, L, W2, Q+, Q-, W3 split by parity
W_GENERATOR_WEIGHTS = ((1, 2, 2, 3), (Fraction(3, 2), Fraction(3, 2), Fraction(5, 2), Fraction(5, 2)))


@dataclass
class CheckRecord:
    id: str
    anchor: str
    status: str          # pass | fail | error
    expected: str
    computed: str
    wall_time: float = 0.0

    def to_dict(self, timings: bool) -> dict:
        d = {"id": self.id, "anchor": self.anchor, "status": self.status,
             "expected": self.expected, "computed": self.computed}
        if timings:
            d["wall_time"] = round(self.wall_time, 6)
        return d


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {"total": len(self.checks), "pass": 0, "fail": 0, "error": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def passed(self) -> bool:
        return self.summary["pass"] == len(self.checks)

    def to_dict(self, timings: bool = False) -> dict:
        return {"suite": self.suite, "checks": [c.to_dict(timings) for c in self.checks],
                "summary": self.summary}

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class Check:
    """``run`` returns ``(passed, expected, computed)``."""
    id: str
    anchor: str
    run: Callable[[], tuple[bool, str, str]]


def _execute(check: Check) -> CheckRecord:
    start = time.perf_counter()
    try:
        ok, expected, computed = check.run()
        status = "pass" if ok else "fail"
    except Exception as exc:  # reported per check, never fatal for the suite
        status, expected, computed = "error", "", f"{type(exc).__name__}: {exc}"
    return CheckRecord(check.id, check.anchor, status, expected, computed, time.perf_counter() - start)


def _k():
    return GENERIC.symbol("k")


def _fmt(x: Scalar, symbol: str = "k") -> str:
    return GENERIC.render(x, symbol)


# -- suite builders -------------------------------------------------------------------------

def _kernel_sl32() -> list[Check]:
    from .screening import kernel_check
    from .wsuper import free_field_data, w32_generators

    checks = []
    for name in ("H", "S", "G+", "G-"):
        for Q in free_field_data(2).screenings():
            def run(name=name, Q=Q):
                rep = kernel_check([Q], w32_generators()[name])
                return rep.passes, "0", rep.witnesses[0][1] if rep.witnesses else "0"
            checks.append(Check(f"kernel/{name}/Q{Q.index}", "W-side generators lie in every screening kernel", run))
    return checks


def _ope_table() -> list[Check]:
    from .wsuper import verify_ope_table

    results = None

    def all_rows():
        nonlocal results
        if results is None:
            results = {r.relation.ident: r for r in verify_ope_table()}
        return results

    idents = list(all_rows())
    checks = []
    for ident in idents:
        def run(ident=ident):
            r = all_rows()[ident]
            return r.passed, r.expected, r.computed
        rel = all_rows()[ident].relation
        anchor = "singular OPEs among H, S, G+, G-"
        if rel.note:
            anchor += f" ({rel.note})"
        checks.append(Check(f"ope/{ident}", anchor, run))
    return checks


def _coset_membership() -> list[Check]:
    from .coset import coset_generators_n2, coset_membership, diagonal_embedding, embedding_closure

    emb = diagonal_embedding(2)
    checks = []
    for name in ("H^", "S^", "G+^", "G-^", "L^", "W2^", "W3^", "Q+^", "Q-^"):
        def run(name=name):
            rep = coset_membership(emb, coset_generators_n2()[name])
            detail = "; ".join(f"{u}_({n}): {x}" for u, n, x in rep.failures[:2]) or "commutes"
            return rep.passes, "commutes", detail
        checks.append(Check(f"member/{name}", "coset fields commute with the diagonal gl_2 currents", run))

    def control():
        rep = coset_membership(emb, emb.algebra.gen("b1"))
        return not rep.passes, "does not commute", "commutes" if rep.passes else "does not commute"
    checks.append(Check("member/control-b1", "a bare bc generator is not in the commutant", control))

    rows = None

    def closure():
        nonlocal rows
        if rows is None:
            rows = {(x, y): (ok, detail) for x, y, ok, detail in embedding_closure(emb)}
        return rows

    for x, y in closure():
        def run(x=x, y=y):
            ok, detail = closure()[(x, y)]
            return ok, "gl_2 bracket at shifted level l+1", detail
        checks.append(Check(f"closure/{x}/{y}", "diagonal images close on gl_2 at level l+1", run))
    return checks


def _ope_match() -> list[Check]:
    from .coset import match_ope_tables

    rows = None

    def table():
        nonlocal rows
        if rows is None:
            rows = {r.ident: r for r in match_ope_tables()}
        return rows

    checks = []
    for ident in table():
        def run(ident=ident):
            r = table()[ident]
            return r.passed, r.w_side, r.coset_side
        checks.append(Check(f"match/{ident}", "W-side and coset-side structure constants agree", run))
    return checks


def _virasoro() -> list[Check]:
    from .algebras import bc_system, bc_virasoro
    from .coset import coset_generators_n2
    from .core import conformal_data, virasoro_data
    from .wsuper import n2_generators, w32_generators

    k = _k()
    l = GENERIC.symbol("l")

    def central(get_L, expected: Scalar, symbol="k"):
        def run():
            vd = virasoro_data(get_L())
            got = _fmt(vd.central_charge, symbol) if vd.is_virasoro else f"not Virasoro: {vd.defect}"
            return vd.is_virasoro and vd.central_charge == expected, _fmt(expected, symbol), got
        return run

    checks = [
        Check("central/L", "Virasoro element of the W-side", central(lambda: w32_generators()["L"], -6 * (3 * k + 2))),
        Check("central/L^", "Virasoro element of the coset", central(lambda: coset_generators_n2()["L^"], 6 * l / (l + 3), "l")),
        Check("central/L^-coset-formula", "coset central charge 3nl/(1+n+l) at n = 2",
              central(lambda: coset_generators_n2()["L^"], 3 * 2 * l / (1 + 2 + l), "l")),
    ]
    for n in (1, 2):
        checks.append(Check(f"central/L({n})", "N=2 family central charge -3n(kn+k+n)",
                            central(lambda n=n: n2_generators(n)["L"], -3 * n * (k * n + k + n))))
        checks.append(Check(f"central/bc({n})", "bc-system Virasoro element has c = n",
                            central(lambda n=n: bc_virasoro(bc_system(n)), Scalar(n))))

    def identity():
        lhs, rhs = -6 * (3 * k + 2), 6 * l / (l + 3)
        return lhs == rhs, _fmt(lhs), _fmt(rhs)
    checks.append(Check("central/identity", "-6(3k+2) = 6l/(l+3) when (k+1)(l+3) = 1", identity))

    weights = {"H": 1, "G+": Fraction(3, 2), "G-": Fraction(3, 2), "W2": 2,
               "Q+": Fraction(5, 2), "Q-": Fraction(5, 2), "W3": 3}
    for side, getter, suffix in (("w", w32_generators, ""), ("coset", coset_generators_n2, "^")):
        for name, w in weights.items():
            def run(getter=getter, name=name + suffix, w=w, suffix=suffix):
                f = getter()
                cd = conformal_data(f["L" + suffix], f[name])
                return (cd.weight == w and cd.primary, f"weight {w}, primary",
                        f"weight {cd.weight}, {'primary' if cd.primary else 'not primary'}")
            checks.append(Check(f"conformal/{name}{suffix}", "conformal weights and primarity", run))
    return checks


def _n2_family() -> list[Check]:
    from .screening import kernel_check
    from .wsuper import free_field_data, n2_generators

    checks = []
    for n in (1, 2):
        for name in ("G+", "G-", "H", "L"):
            for Q in free_field_data(n).screenings():
                def run(n=n, name=name, Q=Q):
                    rep = kernel_check([Q], n2_generators(n)[name])
                    return rep.passes, "0", rep.witnesses[0][1] if rep.witnesses else "0"
                checks.append(Check(f"n2/kernel/n{n}/{name}({n})/Q{Q.index}",
                                    "N=2 generators lie in every screening kernel", run))
    k = _k()
    c = -3 * (2 * k + 1)

    def f():
        return n2_generators(1)

    def rel(left, right, n, expected_fn):
        def run():
            g = f()
            got = g[left].nth(g[right], n)
            exp = expected_fn(g)
            return got == exp, exp.render(), got.render()
        return run

    vac = lambda g: g["H"].algebra.vacuum()  # noqa: E731
    table = [
        ("LL-3", "L", "L", 3, lambda g: vac(g) * (c / 2)),
        ("LL-2", "L", "L", 2, lambda g: g["L"].algebra.zero()),
        ("LL-1", "L", "L", 1, lambda g: g["L"] * 2),
        ("LL-0", "L", "L", 0, lambda g: g["L"].derivative()),
        ("LH-1", "L", "H", 1, lambda g: g["H"]),
        ("LH-0", "L", "H", 0, lambda g: g["H"].derivative()),
        ("LH-2", "L", "H", 2, lambda g: g["H"].algebra.zero()),
        ("HH-1", "H", "H", 1, lambda g: vac(g) * (c / 3)),
        ("HH-0", "H", "H", 0, lambda g: g["H"].algebra.zero()),
        ("HG+-0", "H", "G+", 0, lambda g: g["G+"]),
        ("HG--0", "H", "G-", 0, lambda g: -g["G-"]),
        ("HG+-1", "H", "G+", 1, lambda g: g["H"].algebra.zero()),
        ("HG--1", "H", "G-", 1, lambda g: g["H"].algebra.zero()),
        ("G+G--2", "G+", "G-", 2, lambda g: vac(g) * (c / 3)),
        ("G+G--1", "G+", "G-", 1, lambda g: g["H"]),
        ("G+G--0", "G+", "G-", 0, lambda g: g["L"] + g["H"].derivative() * Fraction(1, 2)),
    ]
    for sign in ("+", "-"):
        G = f"G{sign}"
        table += [
            (f"L{G}-1", "L", G, 1, lambda g, G=G: g[G] * Fraction(3, 2)),
            (f"L{G}-0", "L", G, 0, lambda g, G=G: g[G].derivative()),
            (f"L{G}-2", "L", G, 2, lambda g: g["H"].algebra.zero()),
            (f"{G}{G}-0", G, G, 0, lambda g: g["H"].algebra.zero()),
            (f"{G}{G}-1", G, G, 1, lambda g: g["H"].algebra.zero()),
        ]
    for ident, left, right, n, exp in table:
        checks.append(Check(f"n2/relation/{ident}", "N=2 superconformal relations at n = 1, c = -3(2k+1)",
                            rel(left, right, n, exp)))

    def no_higher():
        g = f()
        bad = []
        for a in ("L", "H", "G+", "G-"):
            for b in ("L", "H", "G+", "G-"):
                top = {("L", "L"): 3}.get((a, b), 2 if {a, b} == {"G+", "G-"} else
                                          (2 if "L" in (a, b) else 1))
                deg = g[a].bracket(g[b]).degree()
                if deg > top:
                    bad.append(f"{a}{b}: pole order {deg + 1}")
        return not bad, "no higher poles", "; ".join(bad) or "no higher poles"
    checks.append(Check("n2/relation/top-poles", "N=2 table has no poles beyond those listed", no_higher))
    return checks


def _limit() -> list[Check]:
    from .coset import LIMIT_PAIRS, _evaluate_at_zero, invariant_limit_targets, limit_fields

    cache: dict = {}

    def fields():
        if "f" not in cache:
            cache["f"] = limit_fields()
        return cache["f"]

    def value(name):
        if name not in cache:
            cache[name] = _evaluate_at_zero(name, fields()[name])
        return cache[name]

    checks = []
    for name, target in LIMIT_PAIRS.items():
        def pole_free(name=name):
            bad = [c for c in fields()[name].terms.values() if c.valuation() < 0]
            return not bad, "no negative powers of s", f"{len(bad)} coefficients with poles" if bad else "no negative powers of s"

        def equal(name=name, target=target):
            got = value(name)
            exp = invariant_limit_targets()[target]
            return got == exp, exp.render(), got.render()
        checks.append(Check(f"limit/pole-free/{name}", "limit fields are regular at s = 0", pole_free))
        checks.append(Check(f"limit/value/{name}", f"s = 0 value equals {target}", equal))
    return checks


def _kernel_dims() -> list[Check]:
    from .screening import graded_kernel_dimension, sl_fermion_charges, free_character
    from .wsuper import free_field_data

    even, odd = W_GENERATOR_WEIGHTS
    oracle = free_character(even, odd, 6)
    checks = []
    for w2 in range(0, 7):
        def run(w2=w2):
            data = free_field_data(2)
            dim = graded_kernel_dimension(data.screenings(), Fraction(w2, 2), data.algebra,
                                          sl_fermion_charges(2))
            return dim == oracle[w2], str(oracle[w2]), str(dim)
        checks.append(Check(f"dims/weight-{w2 / 2:.1f}",
                            "joint screening kernel matches the free character of the generators", run))
    return checks


def _axioms(samples: int = 40, seed: int = 20240601) -> list[Check]:
    from . import axioms as ax
    from .algebras import affine, bc_system, heisenberg, sl_lie_data
    from .fock import FockOracle, _acc
    from .screening import weight_basis
    from .core import State
    from .wsuper import free_field_data

    makers = {
        "bc2": lambda: bc_system(2),
        "free-sl(2|1)": lambda: free_field_data(1).algebra,
        "affine-sl2": lambda: affine(sl_lie_data(2)),
        "heisenberg2": lambda: heisenberg([[2, 1], [1, 0]]),
    }
    checks = []
    for label, make in makers.items():
        def randomized(label=label, make=make):
            alg = make()
            rng = random.Random(f"{seed}-{label}")
            for i in range(samples):
                a, b, c = (ax.random_state(alg, rng, 3, 2) for _ in range(3))
                tests = [("skew-symmetry", ax.skew_symmetry_defect(a, b)),
                         ("quasi-associativity", ax.quasi_associativity_defect(a, b, c)),
                         ("confluence", ax.confluence_defect(alg, ax.random_word(alg, rng)))]
                for m in range(2):
                    for n in range(2):
                        tests.append((f"jacobi m={m} n={n}", ax.jacobi_defect(a, b, c, m, n)))
                for n in range(3):
                    tests.extend(zip(("sesquilinearity left", "sesquilinearity right"),
                                     ax.sesquilinearity_defects(a, b, n)))
                for mono in a.terms:
                    tests.append(("idempotence", ax.idempotence_defect(alg, mono)))
                for what, defect in tests:
                    if defect:
                        return False, "0", f"sample {i}: {what} defect {defect.render()}"
            return True, "0", f"{3 * samples} random states"
        checks.append(Check(f"axioms/random/{label}", "vertex algebra axioms on random states", randomized))

    k1 = GENERIC.symbol("k") + 1
    oracles = {
        "bc1": (lambda: bc_system(1), lambda: FockOracle(fermions={"b1": {"c1": 1}, "c1": {"b1": 1}})),
        "bc2": (lambda: bc_system(2), lambda: FockOracle(fermions={
            "b1": {"c1": 1}, "c1": {"b1": 1}, "b2": {"c2": 1}, "c2": {"b2": 1}})),
        "heisenberg2": (lambda: heisenberg([[2, 1], [1, 0]]),
                        lambda: FockOracle(bosons={"a1": {"a1": 2 * k1, "a2": k1}, "a2": {"a1": k1}})),
    }
    for label, (make, make_oracle) in oracles.items():
        def fock(make=make, make_oracle=make_oracle):
            alg, orc = make(), make_oracle()
            basis = [m for w in range(1, 7) for m in weight_basis(alg, w)]
            count = 0
            for A in basis:
                for B in basis:
                    wa, wb = alg.mono_weight2(A), alg.mono_weight2(B)
                    if wa + wb > 6:
                        continue
                    vb = orc.from_engine(State(alg, {B: 1}))
                    for n in range(-2, (wa + wb) // 2):
                        eng = orc.from_engine(State(alg, {A: 1}).nth(State(alg, {B: 1}), n))
                        _acc(eng, orc.field_mode(FockOracle.letters_of(alg, A), n, vb), -1)
                        count += 1
                        if eng:
                            return False, "agreement", f"A={A} B={B} n={n}"
            return True, "agreement", f"{count} products agree"
        checks.append(Check(f"axioms/fock/{label}", "engine products match a brute-force Fock representation", fock))

    def grading():
        for label, make in makers.items():
            alg = make()
            rng = random.Random(f"{seed}-grading-{label}")
            for _ in range(samples):
                a = next(iter(ax.random_state(alg, rng, 3, 2).homogeneous_components().values()))
                b = next(iter(ax.random_state(alg, rng, 3, 2).homogeneous_components().values()))
                for n in range(-2, 3):
                    err = ax.grading_defect(a, b, n)
                    if err:
                        return False, "additive", f"{label}: {err}"
        return True, "additive", f"{2 * samples * len(makers)} random states"
    checks.append(Check("axioms/grading", "weight and parity are additive under n-th products", grading))
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "kernel-sl32": _kernel_sl32,
    "ope-table": _ope_table,
    "coset-membership": _coset_membership,
    "ope-match": _ope_match,
    "virasoro": _virasoro,
    "n2-family": _n2_family,
    "limit": _limit,
    "kernel-dims": _kernel_dims,
    "axioms": _axioms,
}


def run_suite(name: str, workers: int = 1) -> SuiteReport:
    """Run a named suite; records are sorted by id whatever the completion order."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    checks = SUITES[name]()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_execute, checks))
    else:
        records = [_execute(c) for c in checks]
    records.sort(key=lambda r: r.id)
    return SuiteReport(name, records)


def report_schema() -> dict:
    text = resources.files("voa").joinpath("report_schema.json").read_text()
    return json.loads(text)


def validate_report(doc: dict):
    import jsonschema
    jsonschema.validate(doc, report_schema())
