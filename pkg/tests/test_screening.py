from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import states
from oracles import sympy_character
from voa.screening import (ScreeningError, WeightBoundError, apply_screening, free_character,
                           graded_kernel_dimension, kernel_check, sl_fermion_charges, weight_basis)
from voa.wsuper import free_field_data, w32_generators

DATA = free_field_data(2)
ALG = DATA.algebra
QS = DATA.screenings()


def test_vacuum_is_in_kernel():
    for Q in QS:
        assert not apply_screening(Q, ALG.vacuum())


def test_single_contraction():
    img = apply_screening(QS[0], ALG.gen("F2"))
    assert img.render() == "|mu1>"


def test_alpha1_kernel_membership():
    a1 = ALG.gen("a1")
    assert not apply_screening(QS[0], a1)
    assert apply_screening(QS[1], a1)
    rep = kernel_check(QS, a1)
    assert not rep.passes
    assert [i for i, _ in rep.witnesses] == [2]


def test_w_generators_are_in_kernel():
    for name, X in w32_generators().items():
        assert kernel_check(QS, X).passes, name


def test_screening_rejects_even_dressing():
    from voa.screening import ScreeningCharge
    bad = ScreeningCharge(QS[0].mu, "a1", 9)
    with pytest.raises(ScreeningError):
        apply_screening(bad, ALG.gen("F1"))


def test_screening_rejects_module_states():
    img = apply_screening(QS[0], ALG.gen("F2"))
    with pytest.raises(ScreeningError):
        apply_screening(QS[1], img)


@settings(max_examples=40)
@given(states(ALG, max_weight2=3), st.integers(0, 3))
def test_screening_commutes_with_translation(v, i):
    Q = QS[i]
    assert apply_screening(Q, v.derivative()) == apply_screening(Q, v).derivative()


@settings(max_examples=40)
@given(states(ALG, max_weight2=3, parity=0), states(ALG, max_weight2=3, parity=0),
       st.integers(-3, 3), st.integers(0, 3))
def test_screening_is_linear(u, v, c, i):
    Q = QS[i]
    assert apply_screening(Q, u + v * c) == apply_screening(Q, u) + apply_screening(Q, v) * c


@pytest.mark.parametrize("w2", range(0, 7))
def test_weight_basis_matches_free_character(w2):
    even = tuple(Fraction(g.weight2, 2) for g in ALG.gens if not g.parity)
    odd = tuple(Fraction(g.weight2, 2) for g in ALG.gens if g.parity)
    assert len(weight_basis(ALG, w2)) == sympy_character(even, odd, 6)[w2]


def test_free_character_matches_sympy():
    even, odd = (1, 2, 2, 3), (Fraction(3, 2), Fraction(3, 2), Fraction(5, 2), Fraction(5, 2))
    assert free_character(even, odd, 10) == sympy_character(even, odd, 10)


def test_kernel_dimensions_match_w_character():
    even, odd = (1, 2, 2, 3), (Fraction(3, 2), Fraction(3, 2), Fraction(5, 2), Fraction(5, 2))
    expected = sympy_character(even, odd, 6)
    assert expected == [1, 0, 1, 2, 4, 6, 9]
    charges = sl_fermion_charges(2)
    got = [graded_kernel_dimension(QS, Fraction(w2, 2), ALG, charges) for w2 in range(7)]
    assert got == expected


def test_sector_split_does_not_change_dimension():
    w = Fraction(2)
    assert graded_kernel_dimension(QS, w, ALG) == graded_kernel_dimension(QS, w, ALG, sl_fermion_charges(2))


def test_weight_bound(monkeypatch):
    monkeypatch.setenv("VOA_MAX_WEIGHT", "2")
    with pytest.raises(WeightBoundError):
        graded_kernel_dimension(QS, Fraction(5, 2), ALG)
    monkeypatch.setenv("VOA_MAX_WEIGHT", "lots")
    with pytest.raises(WeightBoundError):
        graded_kernel_dimension(QS, 1, ALG)


def test_rejects_non_half_integer_weight():
    with pytest.raises(ValueError):
        graded_kernel_dimension(QS, Fraction(1, 3), ALG)
