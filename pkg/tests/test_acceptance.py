"""Acceptance criteria, one test and one summary line each.

Run through pytest (the lines appear in the terminal summary) or directly
with ``python3 tests/test_acceptance.py``.
"""
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import sympy_character  # noqa: E402
from voa.suites import run_suite  # noqa: E402

RESULTS: dict[int, tuple[str, bool, str]] = {}


def record(number, title, ok, detail):
    RESULTS[number] = (title, ok, detail)
    print(summary_line(number))
    assert ok, detail


def summary_line(number):
    title, ok, detail = RESULTS[number]
    return f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}"


def _suite(name, prefix=""):
    start = time.perf_counter()
    report = run_suite(name)
    elapsed = time.perf_counter() - start
    checks = [c for c in report.checks if c.id.startswith(prefix)]
    bad = [f"{c.id} ({c.status}: expected {c.expected}, got {c.computed})" for c in checks if c.status != "pass"]
    return checks, bad, elapsed


def _tally(checks, bad):
    return f"{len(checks) - len(bad)}/{len(checks)} pass" + (f"; first failure {bad[0]}" if bad else "")


def test_criterion_01_screening_kernels():
    checks, bad, elapsed = _suite("kernel-sl32")
    ok = not bad and len(checks) == 16 and elapsed < 60
    record(1, "H, S, G+, G- in the kernel of Q1..Q4", ok, f"{_tally(checks, bad)} in {elapsed:.1f}s")


def test_criterion_02_ope_table():
    checks, bad, _ = _suite("ope-table")
    ids = {c.id for c in checks if c.status == "pass"}
    ok = not bad and {"ope/SS-4", "ope/SS-2"} <= ids
    record(2, "W-side OPE table reproduced exactly", ok, _tally(checks, bad))


def test_criterion_03_central_charges():
    checks, bad, _ = _suite("virasoro", "central/")
    need = {"central/L", "central/L(1)", "central/L(2)", "central/bc(1)", "central/bc(2)",
            "central/L^", "central/L^-coset-formula", "central/identity"}
    missing = need - {c.id for c in checks}
    ok = not bad and not missing
    record(3, "central charges of every Virasoro element", ok,
           _tally(checks, bad) + (f"; missing {sorted(missing)}" if missing else ""))


def test_criterion_04_conformal_data():
    checks, bad, _ = _suite("virasoro", "conformal/")
    names = {c.id.split("/")[1] for c in checks}
    ok = not bad and {"H", "G+", "G-", "W2", "Q+", "Q-", "W3"} <= names
    record(4, "conformal weights and primarity", ok, _tally(checks, bad))


def test_criterion_05_n2_family():
    checks, bad, _ = _suite("n2-family")
    kernel = {c.id for c in checks if c.id.startswith("n2/kernel/")}
    want = {f"n2/kernel/n{n}/{f}({n})/Q{i}" for n in (1, 2) for f in ("G+", "G-", "H", "L")
            for i in range(1, 2 * n + 1)}
    relations = [c for c in checks if c.id.startswith("n2/relation/")]
    ok = not bad and want <= kernel and relations
    record(5, "N=2 family in the screening kernels, N=2 relations at n = 1", ok, _tally(checks, bad))


def test_criterion_06_coset_membership():
    checks, bad, _ = _suite("coset-membership")
    ok = not bad and any(c.id.startswith("member/") for c in checks) and any(
        c.id.startswith("closure/") for c in checks)
    record(6, "coset generators commute with the diagonal gl2 currents", ok, _tally(checks, bad))


def test_criterion_07_ope_matching():
    checks, bad, _ = _suite("ope-match")
    record(7, "W-side and coset OPE tables agree in Q(t)", not bad and bool(checks), _tally(checks, bad))


def test_criterion_08_limit():
    checks, bad, _ = _suite("limit")
    pole_free = [c for c in checks if c.id.startswith("limit/pole-free/")]
    values = [c for c in checks if c.id.startswith("limit/value/")]
    ok = not bad and len(pole_free) == 8 and len(values) == 8
    record(8, "large-level limit of the eight rescaled fields", ok, _tally(checks, bad))


def test_criterion_09_kernel_dimensions():
    even = (1, 2, 2, 3)
    odd = (Fraction(3, 2), Fraction(3, 2), Fraction(5, 2), Fraction(5, 2))
    oracle = sympy_character(even, odd, 6)  # before the engine runs
    checks, bad, elapsed = _suite("kernel-dims")
    computed = [int(c.computed) for c in sorted(checks, key=lambda c: Fraction(c.id.split("-", 1)[1]))]
    ok = not bad and computed == oracle == [1, 0, 1, 2, 4, 6, 9] and elapsed < 600
    record(9, "graded kernel dimensions up to weight 3", ok,
           f"engine {tuple(computed)}, series oracle {tuple(oracle)}, {elapsed:.1f}s")


def test_criterion_10_axioms():
    checks, bad, _ = _suite("axioms")
    states = sum(int(m.group(1)) for c in checks for m in [re.match(r"(\d+) random states", c.computed)] if m)
    fock = {c.id for c in checks if c.id.startswith("axioms/fock/")}
    ok = not bad and states >= 500 and {"axioms/fock/bc2", "axioms/fock/heisenberg2"} <= fock
    record(10, "axiom properties and Fock oracle", ok, f"{_tally(checks, bad)}, {states} random states")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
