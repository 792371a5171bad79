import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohenalg.cohen_algebra import AlgebraElement, full_basis
from cohenalg.cohen_group import random_word, rep
from cohenalg.errors import GrammarError, ShapeMismatchError
from cohenalg.grammar import parse_element, parse_group_element, parse_tensor_input, parse_vector, parse_word
from cohenalg.nat_transform import FreeModule
from cohenalg.ring_core import Z, RingSpec


@pytest.mark.parametrize("text", ["1 + y1.y2 - 3*y2.y1", "y1", "-2*y3.y1", "0", "{1|2}.{3|4} - {3|4}.{1|2}"])
def test_elements_print_back_unchanged(text):
    assert str(parse_element(text, Z)) == text


def test_element_shape_inference():
    a = parse_element("{1|2}.{3|4}", Z)
    assert (a.n, a.k) == (4, 2)
    assert parse_element("y1", Z, 3).n == 3
    assert parse_element("0", Z, 2).is_zero()
    assert parse_element("y1.y1", Z).is_zero()
    assert str(parse_element("{y1|y2}", Z)) == "{1|2}"


def test_element_coefficients_reduce():
    assert str(parse_element("7*y1 - y2", RingSpec.modular(5))) == "2*y1 + 4*y2"


def test_element_errors():
    with pytest.raises(GrammarError) as excinfo:
        parse_element("y1 +", Z)
    assert excinfo.value.position == 4
    with pytest.raises(GrammarError):
        parse_element("y1.{1|2}", Z)
    with pytest.raises(ShapeMismatchError):
        parse_element("{1|2}", Z, 4, 1)
    with pytest.raises(GrammarError):
        parse_element("z1", Z)


@pytest.mark.parametrize(
    "text",
    ["x1^2 x2^-1 [x1,x2]^3 (x1 x2)^2", "[x1,x2,x3]", "[x1 x2,x3^-2]", "1", "{1|2}^4 {3|4}", "[[x1,x2],x3]"],
)
def test_words_print_back_unchanged(text):
    assert str(parse_word(text, Z)) == text


def test_word_simplification_on_parse():
    assert str(parse_word("x1 1 x2", Z)) == "x1 x2"
    assert str(parse_word("x1^2^3", Z)) == "x1^6"
    assert str(parse_word("(x1)^-1", Z)) == "x1^-1"


def test_printing_normalises_text_but_keeps_the_value():
    ring = RingSpec.modular(4)
    word = parse_word("x1^-1 x2", ring)
    assert str(word) == "x1^3 x2"
    assert parse_group_element(str(word), ring) == parse_group_element("x1^-1 x2", ring)
    nested = parse_word("(x1 x2) x3", Z)
    assert str(nested) == "x1 x2 x3"
    assert parse_group_element(str(nested), Z) == parse_group_element("(x1 x2) x3", Z)


def test_block_letters_accept_generator_prefix():
    word = parse_word("{x1|x2}^3", Z, 2, 2)
    assert str(word) == "{1|2}^3"
    assert parse_group_element("{x1|x2}^4", RingSpec.modular(4), 2, 2).is_identity()


def test_word_errors_carry_offsets():
    with pytest.raises(GrammarError) as excinfo:
        parse_word("x1 ^", Z)
    assert excinfo.value.position == 4
    with pytest.raises(GrammarError) as excinfo:
        parse_word("x1 + x2", Z)
    assert excinfo.value.position == 3
    assert "offset 3" in str(excinfo.value)
    with pytest.raises(GrammarError) as excinfo:
        parse_word("[x1]", Z)
    assert excinfo.value.position == 0


@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
def test_random_words_round_trip(seed, k):
    word = random_word(random.Random(seed), Z, 4, k)
    reparsed = parse_word(str(word), Z, 4, k)
    assert rep(reparsed) == rep(word)


@given(st.lists(st.integers(-3, 3), min_size=16, max_size=16), st.sampled_from([Z, RingSpec.modular(5)]))
def test_random_elements_round_trip(coefficients, ring):
    element = AlgebraElement(ring, 3, dict(zip(full_basis(3), coefficients)))
    assert parse_element(str(element), ring, 3) == element


def test_vectors():
    assert parse_vector("[1,-2,3]") == (1, -2, 3)
    with pytest.raises(GrammarError):
        parse_vector("[1,2]", 3)
    with pytest.raises(GrammarError):
        parse_vector("[1,2")


def test_tensor_inputs():
    v2 = FreeModule(Z, 2)
    value = parse_tensor_input("1 (x) [1,0]", v2)
    assert value.slots == (None, (1, 0))
    assert str(value) == "1 (x) [1,0]"
    reduced = parse_tensor_input("[3,-1] (x) 1", FreeModule(RingSpec.modular(2), 2))
    assert reduced.slots == ((1, 1), None)
    with pytest.raises(GrammarError):
        parse_tensor_input("[1,2,3]", v2)
    with pytest.raises(GrammarError):
        parse_tensor_input("1 (x)", v2)
