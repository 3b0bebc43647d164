import json

import pytest

from voa.algebras import (ConfigError, CriticalLevelError, affine, algebra_from_config, alternating_gram,
                          bc_system, bc_virasoro, config_to_json, heisenberg, neutral_fermion,
                          sl_lie_data, sugawara, tensor)
from voa.core import BracketSpecError, virasoro_data
from voa.scalar import GENERIC

l = GENERIC.symbol("l")
k = GENERIC.symbol("k")


def test_heisenberg_pairing():
    A = heisenberg([[2, 1], [1, 0]])
    br = A.gen("a1").bracket(A.gen("a1"))
    assert br[1] == A.vacuum() * (2 * (k + 1))
    assert A.gen("a2").bracket(A.gen("a2")) == 0


def test_fermion_pairing_is_symmetric():
    A = neutral_fermion(alternating_gram(2))
    assert A.gen("F2").bracket(A.gen("F1"))[0] == A.vacuum()


def test_bc_virasoro_central_charge():
    for n in (1, 2):
        vd = virasoro_data(bc_virasoro(bc_system(n)))
        assert vd.is_virasoro and vd.central_charge == n


@pytest.mark.parametrize("n,dim,h", [(2, 3, 2), (3, 8, 3)])
def test_sugawara_central_charge(n, dim, h):
    A = affine(sl_lie_data(n))
    vd = virasoro_data(sugawara(A))
    assert vd.is_virasoro
    assert vd.central_charge == dim * l / (l + h)


def test_sugawara_makes_currents_primary():
    from voa.core import conformal_data
    A = affine(sl_lie_data(2))
    L = sugawara(A)
    for x in A.meta["lie"].basis:
        cd = conformal_data(L, A.gen(x))
        assert cd.weight == 1 and cd.primary


def test_critical_level():
    A = affine(sl_lie_data(3), level=-3)
    with pytest.raises(CriticalLevelError):
        sugawara(A)


def test_lie_data_is_consistent():
    for n in (2, 3):
        sl_lie_data(n).check()


def test_affine_bracket():
    A = affine(sl_lie_data(2))
    e, f, h = (A.gen(x) for x in A.meta["lie"].basis)
    br = e.bracket(f)
    assert br[0] == h
    assert br[1] == A.vacuum() * l


def test_rescaled_affine():
    s = GENERIC.t
    A = affine(sl_lie_data(2), rescale="t")
    e, f, h = (A.gen(x) for x in A.meta["lie"].basis)
    br = e.bracket(f)
    assert br[0] == h * s
    assert br[1] == A.vacuum() * (s * s * l)


def test_tensor_keeps_factors_independent():
    A = tensor(heisenberg([[1]]), bc_system(1))
    assert A.gen("a1").bracket(A.gen("b1")) == 0
    assert A.gen("b1").bracket(A.gen("c1"))[0] == A.vacuum()


def test_tensor_name_collision():
    with pytest.raises(BracketSpecError):
        tensor(bc_system(1), bc_system(1))


def test_config_round_trip():
    doc = {"type": "tensor", "factors": [
        {"type": "heisenberg", "gram": [[0, 1], [1, 0]], "scale": "k+1", "prefix": "a"},
        {"type": "fermion", "gram": [[0, 1], [1, 0]], "prefix": "F"}]}
    A = algebra_from_config(doc)
    B = algebra_from_config(config_to_json(A))
    assert config_to_json(A) == config_to_json(B)
    assert [g.name for g in A.gens] == [g.name for g in B.gens]
    assert A.gen("a1").bracket(A.gen("a2"))[1] == A.vacuum() * (k + 1)


def test_config_errors():
    with pytest.raises(ConfigError):
        algebra_from_config({"type": "virasoro"})
    with pytest.raises(ConfigError):
        algebra_from_config({"type": "heisenberg"})
    with pytest.raises(ConfigError):
        algebra_from_config({"type": "affine", "lie": "so5"})
    with pytest.raises(json.JSONDecodeError):
        algebra_from_config("{not json")


def test_bc_needs_positive_rank():
    with pytest.raises(BracketSpecError):
        bc_system(0)
