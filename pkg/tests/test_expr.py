import random

import pytest
from hypothesis import given, settings, strategies as st

from sl2hyper.expr import ParseError, parse_element
from sl2hyper.hyperalgebra import AlgebraElement, H, X, Y
from sl2hyper.idempotents import b_element, idempotent, mu, parse_tuple
from sl2hyper.verify import random_element


def test_atoms():
    p = 3
    assert parse_element("X(2)", p) == X(2, p)
    assert parse_element("Y(1)*H(2)*X(1)", p) == Y(1, p) * H(2, p) * X(1, p)
    assert parse_element("mu(1)", p) == mu(1, 1, p)
    assert parse_element("mu(4, 2)", p) == mu(4, 2, p)
    t = parse_tuple("0:0,1:2", p)
    assert parse_element("B(01; 0:0,1:2)", p) == b_element((0, 1), t)
    assert parse_element("E(0:0, 1:2)", p) == idempotent(t)
    assert parse_element("2*(X(1) + 1)", p) == X(1, p) * 2 + 2


def test_spec_examples():
    assert parse_element("mu(1)*Y(1)*X(1)", 2) == b_element((0,), parse_tuple("1:0", 2))
    assert str(parse_element("X(1)*Y(1)", 3)) == "Y(1)*X(1) + H(1)"
    assert str(parse_element("1", 5)) == "1"


@pytest.mark.parametrize(
    "text,pos",
    [("X(1)*+Y(1)", 5), ("X(", 2), ("Q(1)", 0), ("X(1) Y(1)", 5), ("B(012; 0:0,1:2)", 2), ("E(0:3)", 2), ("X(1)$", 4)],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(text, 3)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (5, 1)])
def test_canonical_round_trip(p, r):
    rng = random.Random(p + r)
    for _ in range(100):
        e = random_element(rng, p, r, terms=5) * random_element(rng, p, r)
        assert parse_element(str(e), p) == e
    assert parse_element(str(AlgebraElement.zero(p)), p).is_zero()


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8)), st.integers(1, 4)))
def test_round_trip_property(terms):
    e = AlgebraElement(5, terms)
    assert parse_element(str(e), 5) == e
