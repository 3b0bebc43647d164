import pytest

from voa.core import conformal_data, virasoro_data
from voa.scalar import GENERIC
from voa.screening import kernel_check
from voa.wsuper import check_relations, free_field_data, n2_generators, verify_ope_table, w32_generators

k = GENERIC.symbol("k")


def test_ope_table():
    bad = [(r.relation.ident, r.difference) for r in verify_ope_table() if not r.passed]
    assert bad == []


def test_wrong_level_is_detected():
    # the table must be sensitive to the level: evaluate the expectations at k+1
    results = check_relations(w32_generators(), k + 1)
    assert not all(r.passed for r in results)


def test_w_side_central_charge():
    vd = virasoro_data(w32_generators()["L"])
    assert vd.central_charge == -6 * (3 * k + 2)


def test_w2_is_primary_of_weight_two():
    f = w32_generators()
    cd = conformal_data(f["L"], f["W2"])
    assert cd.weight == 2 and cd.primary


@pytest.mark.parametrize("n", [1, 2, 3])
def test_n2_family_central_charge(n):
    vd = virasoro_data(n2_generators(n)["L"])
    assert vd.is_virasoro
    assert vd.central_charge == -3 * n * (k * n + k + n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_n2_family_in_kernel(n):
    Qs = free_field_data(n).screenings()
    for name, X in n2_generators(n).items():
        assert kernel_check(Qs, X).passes, name


def test_n2_relations_rank_one():
    f = n2_generators(1)
    Gp, Gm, H, L = f["G+"], f["G-"], f["H"], f["L"]
    c = -3 * (2 * k + 1)
    vac = H.algebra.vacuum()
    assert H.nth(H, 1) == vac * (c / 3)
    assert H.nth(H, 0) == 0
    assert H.nth(Gp, 0) == Gp
    assert H.nth(Gm, 0) == -Gm
    assert Gp.nth(Gm, 2) == vac * (c / 3)
    assert not Gp.bracket(Gp) and not Gm.bracket(Gm)
    for X, w2 in ((H, 2), (Gp, 3), (Gm, 3)):
        cd = conformal_data(L, X)
        assert cd.primary and 2 * cd.weight == w2


def test_free_field_data_is_shared():
    assert free_field_data(2) is free_field_data(2)
    with pytest.raises(ValueError):
        free_field_data(0)
