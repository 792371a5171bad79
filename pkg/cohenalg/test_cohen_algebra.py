from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohenalg.cohen_algebra import (
    AlgebraElement,
    Monomial,
    augmentation,
    basis,
    coordinates,
    elem_pow,
    element_from_coordinates,
    equalizer_submodule,
    flatten_blocks,
    full_basis,
    is_member_L,
    is_member_L_lk,
    iterated_bracket,
    projection_kernel_submodule,
    projection_pi,
    projection_pi_block,
    shuffle_expand,
    shuffle_orders,
    unit_inverse,
    window_bounds,
)
from cohenalg.errors import IndexRangeError, NotAUnitError, RingMismatchError, ShapeMismatchError
from cohenalg.exact_linalg import submodule_rank
from cohenalg.ring_core import Z, RingSpec


def y(n, i, ring=Z):
    return AlgebraElement.generator(ring, n, i)


@pytest.mark.parametrize("t,expected", enumerate([1, 5, 20, 60, 120, 120]))
def test_basis_counts_on_five_generators(t, expected):
    assert len(basis(5, 1, t)) == expected == comb(5, t) * factorial(t)


def test_basis_listing():
    assert [str(m) for m in basis(3, 1, 2)] == ["y1.y2", "y1.y3", "y2.y1", "y2.y3", "y3.y1", "y3.y2"]
    assert basis(2, 1, 3) == []
    assert len(basis(4, 2, 2)) == 24
    assert len(basis(4, 2, 1)) == 12
    assert str(basis(4, 2, 2)[0]) == "{1|2}.{3|4}"


def test_repeated_index_vanishes():
    assert (y(2, 1) * y(2, 1)).is_zero()
    assert AlgebraElement(Z, 2, {Monomial((1, 1)): 3}).is_zero()
    assert AlgebraElement.generator(Z, 3, (2, 2)).is_zero()
    assert y(2, 1) * y(2, 2) != y(2, 2) * y(2, 1)


def test_printing():
    bracket = shuffle_expand([1, 2])
    assert str(bracket) == "y1.y2 - y2.y1"
    assert str(bracket + 1) == "1 + y1.y2 - y2.y1"
    assert str(bracket * 3) == "3*y1.y2 - 3*y2.y1"
    assert str(AlgebraElement.zero(Z, 2)) == "0"
    assert str(y(2, 1, RingSpec.modular(5)) * -1) == "4*y1"
    assert str(AlgebraElement.generator(Z, 4, (1, 2)) * AlgebraElement.generator(Z, 4, (3, 4))) == "{1|2}.{3|4}"


def test_shuffle_orders_for_three_entries():
    assert list(shuffle_orders(3)) == [(1, (1, 2, 3)), (-1, (2, 1, 3)), (-1, (3, 1, 2)), (1, (3, 2, 1))]


def test_three_fold_bracket():
    expected = (
        y(3, 1) * y(3, 2) * y(3, 3)
        - y(3, 2) * y(3, 1) * y(3, 3)
        - y(3, 3) * y(3, 1) * y(3, 2)
        + y(3, 3) * y(3, 2) * y(3, 1)
    )
    assert shuffle_expand([1, 2, 3]) == expected
    assert iterated_bracket([y(3, 1), y(3, 2), y(3, 3)]) == expected


@given(st.permutations(list(range(1, 6))), st.integers(1, 5))
def test_shuffle_expansion_matches_recursive_bracket(order, t):
    indices = order[:t]
    assert shuffle_expand(indices, Z, 5) == iterated_bracket([y(5, i) for i in indices])


def test_bracket_with_repeated_index_is_zero():
    assert shuffle_expand([1, 2, 1], Z, 2).is_zero()


def test_block_bracket():
    a, b = AlgebraElement.generator(Z, 4, (1, 2)), AlgebraElement.generator(Z, 4, (3, 4))
    assert str(shuffle_expand([a, b])) == "{1|2}.{3|4} - {3|4}.{1|2}"


def test_unit_inverse_and_powers():
    u = y(2, 1) * 2 + 1
    assert u * unit_inverse(u) == AlgebraElement.one(Z, 2)
    assert elem_pow(u, -1) == y(2, 1) * -2 + 1
    assert elem_pow(u, 0) == AlgebraElement.one(Z, 2)
    assert u ** 3 == y(2, 1) * 6 + 1
    with pytest.raises(NotAUnitError):
        unit_inverse(y(2, 1) + 2)
    ring = RingSpec.modular(9)
    v = y(2, 1, ring) + 2
    assert v * unit_inverse(v) == AlgebraElement.one(ring, 2)


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_inverse_of_random_units(coefficients):
    monomials = [Monomial((1,)), Monomial((2,)), Monomial((1, 2)), Monomial((2, 1))]
    u = AlgebraElement(Z, 2, dict(zip(monomials, coefficients))) + 1
    assert u * unit_inverse(u) == AlgebraElement.one(Z, 2)
    assert unit_inverse(u) * u == AlgebraElement.one(Z, 2)


def test_torsion_over_z_mod_4():
    ring = RingSpec.modular(4)
    unit = AlgebraElement.generator(ring, 2, (1, 2)) + 1
    assert elem_pow(unit, 4) == AlgebraElement.one(ring, 2, 2)
    assert elem_pow(unit, 2) != AlgebraElement.one(ring, 2, 2)


def test_augmentation_and_grading():
    a = shuffle_expand([1, 2]) + y(2, 1) * 5 + 7
    assert augmentation(a) == Z(7)
    assert a.degree() == 2
    assert a.homogeneous(1) == y(2, 1) * 5
    assert AlgebraElement.zero(Z, 2).degree() == -1


def test_flatten_blocks():
    block = AlgebraElement.generator(Z, 4, (1, 2)) * AlgebraElement.generator(Z, 4, (3, 4))
    flat = flatten_blocks(block)
    assert flat.k == 1
    assert flat == y(4, 1) * y(4, 2) * y(4, 3) * y(4, 4)


def test_coordinates_round_trip():
    monomials = full_basis(2)
    a = shuffle_expand([1, 2]) + 3
    vector = coordinates(a, monomials)
    assert vector == (3, 0, 0, 1, -1)
    assert element_from_coordinates(Z, 2, monomials, vector) == a


def test_face_projection():
    a = y(3, 1) * y(3, 3) + y(3, 2)
    assert projection_pi(2, a) == y(2, 1) * y(2, 2)
    with pytest.raises(IndexRangeError):
        projection_pi(4, a)


def test_window_bounds():
    assert window_bounds(0, 2, 4, "verbatim") == (1, 2, 1)
    assert window_bounds(1, 2, 4, "verbatim") == (2, 3, 1)
    assert window_bounds(1, 2, 4, "window") == (3, 4, 2)
    with pytest.raises(IndexRangeError):
        window_bounds(3, 2, 4, "verbatim")
    with pytest.raises(ShapeMismatchError):
        window_bounds(0, 2, 4, "sideways")


def test_window_projection():
    assert projection_pi_block(0, 2, y(4, 3)) == y(3, 2)
    assert projection_pi_block(0, 2, y(4, 1)).is_zero()
    assert projection_pi_block(1, 2, y(4, 1), "window") == y(2, 1)


def test_equalizer_membership():
    assert is_member_L(y(2, 1) + y(2, 2) + 1)
    assert not is_member_L(y(2, 1))
    assert is_member_L(shuffle_expand([1, 2]))
    assert is_member_L(AlgebraElement.one(Z, 0))


def test_block_equalizer_membership():
    assert is_member_L_lk(AlgebraElement.one(Z, 2), 2, 1)
    assert is_member_L_lk(shuffle_expand([1, 2]), 2, 1)
    assert not is_member_L_lk(y(2, 1), 2, 1)
    with pytest.raises(ShapeMismatchError):
        is_member_L_lk(y(3, 1), 2, 1)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_equalizer_and_kernel_ranks(n):
    assert submodule_rank(equalizer_submodule(n, Z)) == sum(factorial(t) for t in range(n + 1))
    assert submodule_rank(projection_kernel_submodule(n, Z)) == factorial(n)


def test_shape_and_ring_errors():
    with pytest.raises(ShapeMismatchError):
        Monomial((1, 2, 3), 2)
    with pytest.raises(IndexRangeError):
        y(2, 3)
    with pytest.raises(RingMismatchError):
        y(2, 1) + y(2, 1, RingSpec.modular(3))
    with pytest.raises(ShapeMismatchError):
        y(2, 1) + y(3, 1)


def random_elements(n, ring=Z, augmented=False):
    monomials = full_basis(n)
    return st.lists(st.integers(-3, 3), min_size=len(monomials), max_size=len(monomials)).map(
        lambda coefficients: AlgebraElement(
            ring, n, dict(zip(monomials, [0] + coefficients[1:] if augmented else coefficients))
        )
    )


@given(random_elements(3), random_elements(3), st.integers(1, 3))
def test_face_projection_is_a_ring_homomorphism(a, b, j):
    assert projection_pi(j, a * b) == projection_pi(j, a) * projection_pi(j, b)
    assert projection_pi(j, a + b) == projection_pi(j, a) + projection_pi(j, b)
    assert projection_pi(j, AlgebraElement.one(Z, 3)) == AlgebraElement.one(Z, 2)


@given(random_elements(4), random_elements(4), st.integers(0, 1), st.sampled_from(["verbatim", "window"]))
def test_window_projection_is_multiplicative(a, b, j, shift):
    assert projection_pi_block(j, 2, a * b, shift) == projection_pi_block(j, 2, a, shift) * projection_pi_block(
        j, 2, b, shift
    )


@given(st.integers(1, 3).flatmap(lambda n: random_elements(n, RingSpec.modular(5), augmented=True)))
def test_augmentation_ideal_is_nilpotent(z):
    assert augmentation(z) == RingSpec.modular(5)(0)
    assert elem_pow(z, z.n + 1).is_zero()


def test_block_augmentation_ideal_is_nilpotent():
    z = AlgebraElement.generator(Z, 4, (1, 2)) + AlgebraElement.generator(Z, 4, (3, 4)) * 2
    assert not elem_pow(z, 2).is_zero()
    assert elem_pow(z, 3).is_zero()
