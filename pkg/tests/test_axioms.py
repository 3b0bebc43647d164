import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import states
from voa.algebras import affine, bc_system, heisenberg, sl_lie_data
from voa.axioms import (confluence_defect, grading_defect, idempotence_defect, jacobi_defect,
                        quasi_associativity_defect, random_state, random_word, sesquilinearity_defects,
                        skew_symmetry_defect)
from voa.core import State
from voa.fock import FockOracle
from voa.scalar import GENERIC
from voa.screening import weight_basis
from voa.wsuper import free_field_data

K1 = GENERIC.symbol("k") + 1
HEIS_GRAM = [[2, 1], [1, 0]]

ALGEBRAS = {
    "bc2": bc_system(2),
    "free-sl21": free_field_data(1).algebra,
    "affine-sl2": affine(sl_lie_data(2)),
    "heisenberg": heisenberg(HEIS_GRAM),
}
IDS = sorted(ALGEBRAS)


def algebra_states(n):
    """Strategy for (algebra name, n homogeneous states) with the states drawn from that algebra."""
    return st.sampled_from(IDS).flatmap(
        lambda name: st.tuples(st.just(name), *[states(ALGEBRAS[name], max_weight2=3, max_terms=2,
                                                       homogeneous=True)] * n))


@settings(max_examples=60)
@given(algebra_states(2))
def test_skew_symmetry(drawn):
    _, a, b = drawn
    assert skew_symmetry_defect(a, b) == 0


@settings(max_examples=60)
@given(algebra_states(3), st.integers(0, 2), st.integers(-1, 2))
def test_borcherds_commutator(drawn, m, n):
    _, a, b, c = drawn
    assert jacobi_defect(a, b, c, m, n) == 0


@settings(max_examples=60)
@given(algebra_states(2), st.integers(-2, 3))
def test_sesquilinearity(drawn, n):
    _, a, b = drawn
    left, right = sesquilinearity_defects(a, b, n)
    assert left == 0 and right == 0


@settings(max_examples=60)
@given(algebra_states(2), st.integers(-2, 3))
def test_grading(drawn, n):
    _, a, b = drawn
    assert grading_defect(a, b, n) == ""


@settings(max_examples=40)
@given(algebra_states(3))
def test_quasi_associativity(drawn):
    _, a, b, c = drawn
    assert quasi_associativity_defect(a, b, c) == 0


@pytest.mark.parametrize("name", IDS)
def test_normal_form_is_idempotent(name):
    alg = ALGEBRAS[name]
    for w2 in range(1, 5):
        for mono in weight_basis(alg, w2):
            assert idempotence_defect(alg, mono) == 0


@pytest.mark.parametrize("name", IDS)
def test_mode_straightening_agrees_with_nested_products(name):
    alg = ALGEBRAS[name]
    rng = random.Random(name)
    for _ in range(25):
        assert confluence_defect(alg, random_word(alg, rng, length=rng.randint(2, 4))) == 0


def test_deterministic_sweep_of_random_states():
    """Skew symmetry and the commutator formula over 600 seeded random states."""
    rng = random.Random(20240611)
    drawn = 0
    for name in IDS:
        alg = ALGEBRAS[name]
        for _ in range(50):
            a, b, c = (random_state(alg, rng, max_weight2=3, max_terms=2) for _ in range(3))
            drawn += 3
            assert skew_symmetry_defect(a, b) == 0, name
            assert jacobi_defect(a, b, c, rng.randint(0, 1), rng.randint(0, 1)) == 0, name
    assert drawn >= 500


# -- independent Fock-space oracle ------------------------------------------------------

def bc_oracle(n, pairing=1):
    fermions = {}
    for i in range(1, n + 1):
        fermions[f"b{i}"] = {f"c{i}": 1}
        fermions[f"c{i}"] = {f"b{i}": pairing}
    return FockOracle(fermions=fermions)


def heisenberg_oracle(gram, scale):
    names = [f"a{i + 1}" for i in range(len(gram))]
    return FockOracle(bosons={x: {y: gram[i][j] * scale for j, y in enumerate(names)}
                              for i, x in enumerate(names)})


def oracle_product(oracle, a, b, n):
    """``a_(n) b`` computed entirely in the Fock representation."""
    vec = oracle.from_engine(b)
    out = {}
    for mono, c in a.terms.items():
        letters = FockOracle.letters_of(a.algebra, mono)
        for key, v in oracle.field_mode(letters, n, vec).items():
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def monomial_states(alg, max_w2):
    basis = [alg.vacuum()]
    for w2 in range(1, max_w2 + 1):
        basis += [State(alg, {mono: alg.scalar(1)}) for mono in weight_basis(alg, w2)]
    return basis


@pytest.mark.parametrize("alg,oracle,max_w2", [
    (ALGEBRAS["bc2"], bc_oracle(2), 5),
    (ALGEBRAS["heisenberg"], heisenberg_oracle(HEIS_GRAM, K1), 6),
], ids=["bc2", "heisenberg"])
def test_products_match_fock_oracle(alg, oracle, max_w2):
    basis = monomial_states(alg, max_w2)
    assert any(d >= 2 for b in basis for _, d in FockOracle.letters_of(alg, next(iter(b.terms))))
    disagreements = 0
    compared = 0
    for a in basis[1:]:
        for b in basis:
            for n in range(-2, 3):
                compared += 1
                if oracle.from_engine(a.nth(b, n)) != oracle_product(oracle, a, b, n):
                    disagreements += 1
    assert compared > 100 and disagreements == 0


def test_mutated_fock_oracle_disagrees():
    alg = ALGEBRAS["bc2"]
    good, bad = bc_oracle(2), bc_oracle(2, pairing=-1)
    b1, c1 = alg.gen("b1"), alg.gen("c1")
    X = b1.nop(c1)
    assert good.from_engine(X.nth(X, 1)) == oracle_product(good, X, X, 1)
    assert bad.from_engine(c1.nth(b1, 0)) != oracle_product(bad, c1, b1, 0)


def test_mutated_heisenberg_scale_disagrees():
    alg = ALGEBRAS["heisenberg"]
    wrong = heisenberg_oracle(HEIS_GRAM, K1 + 1)
    a1 = alg.gen("a1")
    assert wrong.from_engine(a1.nth(a1, 1)) != oracle_product(wrong, a1, a1, 1)
