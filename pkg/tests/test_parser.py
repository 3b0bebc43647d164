import pytest
from hypothesis import given
from hypothesis import strategies as st

from voa.parser import (Bracket, Deriv, Name, NormalOrder, ParseError, Product, Scaled, Sum,
                        names_in, parse_expression, render_expression)
from voa.registry import default_registry

NAMES = ["H", "S", "G+", "G-", "L", "G+(1)", "G-^", "a1", "F2"]


def parse(text):
    return parse_expression(text, NAMES)


def test_nested_normal_order():
    assert parse("no(H, S, G+)") == NormalOrder((Name("H"), Name("S"), Name("G+")))


def test_longest_name_wins():
    assert parse("G+(1)") == Name("G+(1)")
    assert parse("D^2(a1)+G+(1)") == Sum(((1, Deriv(2, Name("a1"))), (1, Name("G+(1)"))))


def test_scalar_prefix():
    node = parse("(k+1)/2*bra(H,S)")
    assert node == Scaled("(k+1)/2", Bracket(Name("H"), Name("S")))


def test_product_needs_integer():
    assert parse("prod(G+, G-, 1)") == Product(Name("G+"), Name("G-"), 1)
    with pytest.raises(ParseError):
        parse("prod(H,S)")


@pytest.mark.parametrize("text,offset", [
    ("H +", 3),
    ("no(H)", 0),
    ("X", 0),
    ("(H", 2),
    ("D^x(H)", 2),
    ("H + é", 4),
])
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.offset == offset


def test_offsets_count_bytes():
    with pytest.raises(ParseError) as err:
        parse_expression("α1 + X", ["α1"])
    assert err.value.offset == len("α1 + ".encode())


def test_names_in():
    assert sorted(names_in(parse("no(H, D(S)) - 2*G+(1)"))) == ["G+(1)", "H", "S"]


def test_evaluate_matches_engine():
    reg = default_registry()
    val, scope = reg.evaluate_text("prod(G+, G-, 1) - (k+1)*H")
    assert scope.name == "w-side" and val == 0


def test_mixed_algebras_rejected():
    from voa.core import AlgebraMismatchError
    with pytest.raises(AlgebraMismatchError):
        default_registry().evaluate_text("H + H^")


SCALARS = ["2", "-3", "1/2", "(k+1)", "(k+1)/2", "3/(l+3)", "t^2"]

leaves = st.sampled_from(NAMES).map(Name)


def _extend(children):
    return st.one_of(
        st.builds(Deriv, st.integers(1, 3), children),
        st.builds(lambda xs: NormalOrder(tuple(xs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(Product, children, children, st.integers(-2, 3)),
        st.builds(Bracket, children, children),
        st.builds(Scaled, st.sampled_from(SCALARS), children),
        st.builds(lambda ts: Sum(tuple(ts)),
                  st.lists(st.tuples(st.sampled_from([1, -1]), children), min_size=2, max_size=3)),
    )


@given(st.recursive(leaves, _extend, max_leaves=8))
def test_render_parse_round_trip(node):
    text = render_expression(node)
    assert render_expression(parse(text)) == text
