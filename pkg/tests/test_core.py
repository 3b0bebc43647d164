from fractions import Fraction

import pytest

from voa.algebras import alternating_gram, bc_system, heisenberg, neutral_fermion, tensor
from voa.core import AlgebraMismatchError, ConformalDataError, conformal_data, ope_singular, virasoro_data


@pytest.fixture(scope="module")
def alg(free2):
    return free2.algebra


def test_derivative_of_vacuum(alg):
    assert alg.vacuum().derivative() == 0


def test_derivative_of_generator(alg):
    assert alg.gen("a1").derivative() == alg.gen("a1", 1)


def test_leibniz(alg):
    F1, F2 = alg.gen("F1"), alg.gen("F2")
    lhs = F1.nop(F2).derivative()
    assert lhs == F1.derivative().nop(F2) + F1.nop(F2.derivative())


def test_heisenberg_bracket(alg, k):
    br = alg.gen("a1").bracket(alg.gen("a2"))
    assert br.degree() == 1
    assert br[1] == alg.vacuum() * (k + 1)
    assert br[0] == 0


def test_fermion_bracket(alg):
    br = alg.gen("F1").bracket(alg.gen("F2"))
    assert br.degree() == 0
    assert br[0] == alg.vacuum()


def test_gplus_gminus_first_power(wfields, k):
    br = wfields["G+"].bracket(wfields["G-"])
    assert br[1] == wfields["H"] * (k + 1)


def test_vacuum_is_identity(alg, wfields):
    assert alg.vacuum().nop(wfields["S"]) == wfields["S"]


def test_fermion_square_vanishes(alg):
    F1 = alg.gen("F1")
    assert F1.nop(F1) == 0


def test_boson_reordering(alg):
    a1, a2 = alg.gen("a1"), alg.gen("a2")
    assert a2.nop(a1) == a1.nop(a2)


def test_fermion_reordering(alg):
    F1, F2 = alg.gen("F1"), alg.gen("F2")
    assert F2.nop(F1) == -F1.nop(F2)


def test_normal_form_idempotent(alg):
    st = alg.normalize_letters([("a1", 0), ("F2", 1), ("F1", 0)])
    for mono, c in st.terms.items():
        letters = [(alg.gens[g].name, -m - 1) for g, m in mono]
        again = alg.normalize_letters(letters)
        assert again.terms == {mono: again.terms[mono]}


def test_negative_products(alg):
    a1, F2 = alg.gen("a1"), alg.gen("F2")
    assert a1.nth(F2, -2) == a1.derivative().nop(F2)
    assert a1.nth(F2, -3) == a1.derivative(2).nop(F2) / 2


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatchError):
        bc_system(1).gen("b1").nop(bc_system(2).gen("b1"))


def test_virasoro_of_w_side(wfields, k):
    vd = virasoro_data(wfields["L"])
    assert vd.is_virasoro and vd.central_charge == -6 * (3 * k + 2)


def test_weight_one_field_is_not_virasoro(wfields):
    assert not virasoro_data(wfields["H"]).is_virasoro


@pytest.mark.parametrize("name,weight", [("H", 1), ("G+", Fraction(3, 2)), ("G-", Fraction(3, 2)),
                                         ("W2", 2), ("Q+", Fraction(5, 2)), ("Q-", Fraction(5, 2)),
                                         ("W3", 3)])
def test_conformal_data(wfields, name, weight):
    cd = conformal_data(wfields["L"], wfields[name])
    assert cd.weight == weight and cd.primary


def test_derivative_is_not_primary(wfields):
    cd = conformal_data(wfields["L"], wfields["H"].derivative())
    assert cd.weight == 2 and not cd.primary


def test_conformal_data_rejects_mixed_weights(wfields):
    with pytest.raises(ConformalDataError) as err:
        conformal_data(wfields["L"], wfields["H"] + wfields["L"])
    assert err.value.defect is not None


def test_ope_rendering(wfields):
    assert ope_singular(wfields["H"], wfields["H"]) == "-2*(3*k + 2)/(z-w)^2"
    assert ope_singular(wfields["H"], wfields["S"], {"H": wfields["H"]}) == "(-3*(2*k + 1)/2*H(w))/(z-w)^2"
    assert ope_singular(wfields["G+"], wfields["G+"]) == "0"


def test_render_colon_style(alg):
    assert alg.gen("a1").nop(alg.gen("F2", 1)).render() == ":a1 DF2:"
    assert alg.vacuum().render() == "|0>"


def test_render_expr_style_parses_back(alg):
    from voa.registry import default_registry
    st = alg.gen("a1").nop(alg.gen("F2", 1)) * 3 - alg.gen("a2", 2)
    text = st.render("expr")
    value, _ = default_registry().evaluate_text(text)
    assert value == st


def test_bracket_skew_on_generators(alg):
    names = [g.name for g in alg.gens]
    for x in names:
        for y in names:
            assert alg.base_bracket(x, y) is not None


def test_tensor_sign_mixed():
    A = tensor(heisenberg(alternating_gram(2)), neutral_fermion(alternating_gram(2)))
    a1, F1, F2 = A.gen("a1"), A.gen("F1"), A.gen("F2")
    X = a1.nop(F1)
    assert X.parity == 1
    assert X.nth(F2, 0) == a1


def test_caches_are_populated_and_clearable(alg, wfields):
    assert any(alg.cache_sizes().values())
    sizes = dict(alg.cache_sizes())
    alg.clear_caches()
    assert not any(alg.cache_sizes().values())
    assert virasoro_data(wfields["L"]).is_virasoro
    assert sum(alg.cache_sizes().values()) > 0 and sizes
