import pytest

from voa.coset import (LimitError, _evaluate_at_zero, coset_generators_n2, coset_membership,
                       diagonal_embedding, embedding_closure, invariant_limit_targets, limit_fields,
                       limit_values, match_ope_tables)
from voa.core import virasoro_data
from voa.scalar import GENERIC

l = GENERIC.symbol("l")


@pytest.fixture(scope="module")
def emb():
    return diagonal_embedding(2)


def test_embedding_closes(emb):
    bad = [(x, y, d) for x, y, ok, d in embedding_closure(emb) if not ok]
    assert bad == []


@pytest.mark.parametrize("name", ["H^", "S^", "G+^", "G-^"])
def test_generators_commute_with_embedding(emb, name):
    rep = coset_membership(emb, coset_generators_n2()[name])
    assert rep.passes, rep.failures[:2]


def test_bare_current_is_not_in_coset(emb):
    alg = emb.algebra
    rep = coset_membership(emb, alg.gen("e[1,3]"))
    assert not rep.passes


def test_coset_central_charge():
    vd = virasoro_data(coset_generators_n2()["L^"])
    assert vd.is_virasoro
    assert vd.central_charge == 6 * l / (l + 3)


def test_ope_tables_match():
    bad = [(r.ident, r.w_side, r.coset_side) for r in match_ope_tables() if not r.passed]
    assert bad == []


def test_limit_values_match_targets():
    got = limit_values()
    want = invariant_limit_targets()
    pairs = {"J0": "j0", "J1": "j1", "Omega0": "w0", "Omega1": "w1",
             "N0": "nu0", "N1": "nu1", "M0": "mu0", "M1": "mu1"}
    for src, tgt in pairs.items():
        assert got[src] == want[tgt], src


def test_limit_pole_is_reported():
    f = limit_fields()
    s = f["J0"].algebra.context.symbol("s")
    with pytest.raises(LimitError) as err:
        _evaluate_at_zero("J0/s", f["J0"] * (1 / s))
    assert err.value.field == "J0/s"


def test_limit_context_keeps_currents_rescaled():
    alg = limit_fields()["J0"].algebra
    assert alg.context.name != GENERIC.name
