from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twistlab import (NoSigmaContext, ParseError, UnknownGenerator, XiSeries, emit_expression,
                      evaluate, generator, make_gl, parse_expression, tensor, unit)
from twistlab.config import parse_sigma
from twistlab.expr import ESig, Expr, Gen, Term, Xi

G = make_gl(4, weight=(0, 0, 1, 1))
SIGMA = parse_sigma("E=E_24 delta=-1 gamma=1")
NAMES = ["E_13", "E_34", "E_23", "H_12", "E_21"]


def test_example_term():
    tree = parse_expression("-1 xi E_13 (x) E_34 esig(2)", G)
    (term,) = tree.terms
    assert term.coeff == -1
    assert term.slots == ((Xi(1), Gen("E_13")), (Gen("E_34"), ESig(Fraction(2))))
    assert emit_expression(tree) == "-xi E_13 (x) E_34 esig(2)"


def test_unit_literal_and_unicode_separator():
    a = evaluate(parse_expression("1 (x) E_13"), G, 2)
    b = evaluate(parse_expression("1 ⊗ E_13"), G, 2)
    assert a == b == XiSeries.from_tensor(tensor(unit(G), generator(G, "E_13")), 2)


def test_single_slot_terms():
    x = evaluate(parse_expression("2 E_13 E_34 - E_14"), G, 1)
    assert x.arity == 1
    assert x.coefficient(0) == 2 * generator(G, "E_13") * generator(G, "E_34") - generator(G, "E_14")


@pytest.mark.parametrize("text,pos", [
    ("E_13 (x) + E_34", 11),
    ("E_13 (x) esig(1 E_34", 16),
    ("2/0 E_13", 2),
    ("E_13 # E_34", 5),
    ("3 E_13 (x) 2 E_34", 11),
    ("E_13 (x) E_34 + E_13", 16),
])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.position == pos


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        parse_expression("E_15 (x) 1", G)
    with pytest.raises(UnknownGenerator):
        evaluate(parse_expression("E_15 (x) 1"), G, 2)


def test_esig_needs_context():
    with pytest.raises(NoSigmaContext):
        evaluate(parse_expression("E_13 (x) esig(1)"), G, 2)


def test_esig_expansion():
    # sigma = -log(1 + xi E_24), so esig(-1) = 1 + xi E_24
    x = evaluate(parse_expression("esig(-1)"), G, 3, SIGMA)
    assert x == XiSeries.unit(G, 1, 3) + XiSeries.from_tensor(generator(G, "E_24"), 3, 1)


# -- round trip ------------------------------------------------------------------

factors = st.one_of(
    st.builds(Gen, st.sampled_from(NAMES), st.integers(1, 2)),
    st.builds(ESig, st.fractions(min_value=-3, max_value=3, max_denominator=3)),
    st.builds(Xi, st.integers(1, 2)),
)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)


@st.composite
def trees(draw):
    arity = draw(st.integers(1, 3))
    terms = draw(st.lists(st.builds(Term, coeffs, st.tuples(*[st.tuples(*[factors] * draw(st.integers(0, 2)))
                                                             for _ in range(arity)])),
                          min_size=1, max_size=3))
    return Expr(tuple(terms))


@given(trees())
def test_emit_parse_roundtrip(tree):
    text = emit_expression(tree)
    again = parse_expression(text, G)
    assert emit_expression(again) == text
    assert evaluate(again, G, 2, SIGMA) == evaluate(tree, G, 2, SIGMA)
