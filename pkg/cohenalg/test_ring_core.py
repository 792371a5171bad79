import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohenalg.errors import GrammarError, NotAUnitError, RingMismatchError, UnsupportedRingError
from cohenalg.ring_core import Z, RingSpec, Scalar, scalar_add, scalar_is_unit, scalar_mul

moduli = st.integers(min_value=2, max_value=60)


def test_parse_ring_notation():
    assert RingSpec.parse("z") == Z
    assert RingSpec.parse("zmod:9") == RingSpec.modular(9)
    assert str(RingSpec.modular(9)) == "zmod:9"
    assert RingSpec.modular(9).pretty() == "ℤ/9"


@pytest.mark.parametrize("text", ["q", "zmod:", "zmod:x", "zmod:-3"])
def test_parse_rejects_unknown_rings(text):
    with pytest.raises(GrammarError):
        RingSpec.parse(text)


def test_modulus_below_two_is_unsupported():
    with pytest.raises(UnsupportedRingError):
        RingSpec.modular(1)


def test_prime_power_detection():
    assert RingSpec.modular(8).prime_power() == (2, 3)
    assert RingSpec.modular(9).prime_power() == (3, 2)
    assert RingSpec.modular(6).prime_power() is None
    assert Z.prime_power() is None
    assert RingSpec.modular(7).is_prime_field
    assert not RingSpec.modular(9).is_prime_field


def test_examples_in_z_mod_6():
    ring = RingSpec.modular(6)
    assert scalar_add(ring(5), ring(4)) == ring(3)
    assert scalar_mul(ring(2), ring(3)).is_zero()
    assert not scalar_is_unit(ring(3))
    assert scalar_is_unit(ring(5))
    with pytest.raises(NotAUnitError):
        ring(3).inverse()


def test_integer_units():
    assert Z(-1).is_unit() and Z(1).is_unit()
    assert not Z(2).is_unit()
    assert Z(-1).inverse() == Z(-1)


def test_mixed_rings_are_rejected():
    with pytest.raises(RingMismatchError):
        RingSpec.modular(4)(1) + RingSpec.modular(6)(1)


def test_scalars_only_combine_with_ints():
    with pytest.raises(TypeError):
        Z(1) + 1.5


@given(moduli, st.integers(), st.integers())
def test_canonical_representatives(m, a, b):
    ring = RingSpec.modular(m)
    s = ring(a) + ring(b)
    assert 0 <= s.value < m
    assert s == ring(a + b)
    assert ring(a) * ring(b) == ring(a * b)


@given(moduli, st.integers())
def test_unit_inverse(m, a):
    ring = RingSpec.modular(m)
    x = ring(a)
    if x.is_unit():
        assert x * x.inverse() == ring.one()
    else:
        with pytest.raises(NotAUnitError):
            x.inverse()


@given(st.integers(min_value=-50, max_value=50), st.integers(min_value=0, max_value=6))
def test_powers_match_python(a, e):
    assert Z(a) ** e == Scalar(Z, a**e)
    assert RingSpec.modular(7)(a) ** e == RingSpec.modular(7)(a**e)
