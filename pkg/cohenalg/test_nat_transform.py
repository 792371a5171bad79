from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohenalg.cohen_algebra import AlgebraElement, basis, shuffle_expand
from cohenalg.errors import PreconditionError, RingMismatchError, ShapeMismatchError, TruncationError
from cohenalg.exact_linalg import submodule_rank
from cohenalg.grammar import parse_group_element, parse_tensor_input
from cohenalg.nat_transform import (
    CTensorInput,
    FreeModule,
    TensorElement,
    check_lie_equals_gamma_cap_primitives,
    check_rigidity,
    convolution,
    counit_unit_matrix,
    gamma_submodule,
    is_coalgebra_map,
    lie_submodule,
    natural_map_space,
    primitive_cokernel_invariants,
    primitives_basis,
    tensor_comult,
    theta_eval,
    theta_injectivity_matrix,
    theta_matrix,
    verify_theta_injectivity,
)
from cohenalg.ring_core import Z, RingSpec

V2 = FreeModule(Z, 2)


def y(n, i, ring=Z):
    return AlgebraElement.generator(ring, n, i)


def test_free_module_words():
    assert V2.words(2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert len(V2.words_up_to(2)) == 7
    assert V2.words_up_to(4, 2) == [()] + V2.words(2) + V2.words(4)
    with pytest.raises(ShapeMismatchError):
        FreeModule(Z, 0)


def test_tensor_arithmetic():
    v = TensorElement.vector(V2, [1, 2])
    w = TensorElement.vector(V2, [3, 0])
    assert (v * w).coefficient((2, 1)).value == 6
    assert (v - v).is_zero()
    assert TensorElement.unit(V2).counit().value == 1
    assert str(v) == "v1 + 2*v2"
    with pytest.raises(ShapeMismatchError):
        TensorElement.from_word(V2, (3,))


def test_comultiplication_of_a_word():
    square = tensor_comult(TensorElement.from_word(V2, (1, 2)))
    assert square.as_dict() == {((), (1, 2)): 1, ((1,), (2,)): 1, ((2,), (1,)): 1, ((1, 2), ()): 1}
    doubled = tensor_comult(TensorElement.from_word(V2, (1, 1)))
    assert doubled.as_dict()[((1,), (1,))] == 2


def test_block_comultiplication_keeps_blocks_together():
    square = tensor_comult(TensorElement.from_word(V2, (1, 2)), block=2)
    assert square.as_dict() == {((), (1, 2)): 1, ((1, 2), ()): 1}
    with pytest.raises(ShapeMismatchError):
        tensor_comult(TensorElement.from_word(V2, (1,)), block=2)


def test_theta_of_a_generator():
    v = CTensorInput(V2, ((3, 5), None))
    assert theta_eval(y(2, 1), V2, v) == TensorElement.vector(V2, [3, 5])
    assert theta_eval(y(2, 1), V2, CTensorInput(V2, ((3, 5), (1, 0)))).is_zero()
    assert theta_eval(y(2, 2), V2, v).is_zero()


def test_theta_of_a_product_multiplies_in_slot_order():
    v, w = (1, 2), (3, 0)
    value = CTensorInput(V2, (v, w))
    vw = TensorElement.vector(V2, list(v)) * TensorElement.vector(V2, list(w))
    wv = TensorElement.vector(V2, list(w)) * TensorElement.vector(V2, list(v))
    assert theta_eval(y(2, 1) * y(2, 2), V2, value) == vw
    assert theta_eval(y(2, 2) * y(2, 1), V2, value) == wv


def test_theta_of_the_unit_is_the_counit():
    one = AlgebraElement.one(Z, 2)
    assert theta_eval(one, V2, CTensorInput(V2, (None, None))) == TensorElement.unit(V2)
    assert theta_eval(one, V2, CTensorInput(V2, ((1, 1), None))).is_zero()


def test_theta_from_parsed_input():
    value = parse_tensor_input("1 (x) [1,0]", V2)
    assert theta_eval(y(2, 2), V2, value) == TensorElement.from_word(V2, (1,))


def test_theta_rejects_mismatched_inputs():
    with pytest.raises(ShapeMismatchError):
        theta_eval(y(2, 1), V2, CTensorInput(V2, (None,)))
    with pytest.raises(RingMismatchError):
        theta_eval(y(2, 1, RingSpec.modular(3)), V2, CTensorInput(V2, (None, None)))
    with pytest.raises(ShapeMismatchError):
        CTensorInput(V2, ((1, 2, 3), None))


def test_convolution_unit():
    f = theta_matrix(shuffle_expand([1, 2]) + y(2, 1) * 4 + 1, V2)
    unit = counit_unit_matrix(2, V2, f.cap)
    assert convolution(unit, f) == f
    assert convolution(f, unit) == f


@pytest.mark.parametrize(
    "a,b",
    [
        (y(2, 1), y(2, 2)),
        (y(2, 1) + 1, y(2, 2) * 3 + 1),
        (shuffle_expand([1, 2]), AlgebraElement.one(Z, 2) * 2),
    ],
)
def test_theta_is_multiplicative(a, b):
    cap = 2
    product = convolution(theta_matrix(a, V2, cap), theta_matrix(b, V2, cap))
    assert product == theta_matrix(a * b, V2, cap)


def test_degree_cap_is_enforced():
    with pytest.raises(TruncationError):
        theta_matrix(y(2, 1) * y(2, 2), V2, degree_cap=1)


def test_primitives():
    assert submodule_rank(primitives_basis(V2, 1)) == 2
    assert submodule_rank(primitives_basis(V2, 2)) == 1
    assert submodule_rank(primitives_basis(FreeModule(Z, 1), 2)) == 0
    assert submodule_rank(primitives_basis(FreeModule(RingSpec.modular(2), 1), 2)) == 1
    assert submodule_rank(primitives_basis(V2, 0)) == 0
    assert primitives_basis(V2, 0).generators == ()


@pytest.mark.parametrize("n,lie_rank", [(1, 1), (2, 1), (3, 2), (4, 6)])
def test_gamma_and_lie_ranks(n, lie_rank):
    assert submodule_rank(gamma_submodule(n)) == factorial(n)
    assert submodule_rank(lie_submodule(n)) == lie_rank


@pytest.mark.parametrize("ring", [Z, RingSpec.modular(2), RingSpec.modular(3)])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lie_elements_are_the_multilinear_primitives(n, ring):
    assert check_lie_equals_gamma_cap_primitives(n, ring)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_primitive_cokernel_has_no_torsion(n):
    assert set(primitive_cokernel_invariants(n)) <= {1}


def test_theta_injectivity():
    assert verify_theta_injectivity(2, 2)
    assert verify_theta_injectivity(3, 3)
    assert verify_theta_injectivity(2, 3, RingSpec.modular(3))
    assert theta_injectivity_matrix(2, 2).cols == 5
    with pytest.raises(PreconditionError):
        theta_injectivity_matrix(3, 2)


@pytest.mark.parametrize("n,ring", [(2, Z), (4, Z), (4, RingSpec.modular(3))])
def test_theta_injectivity_on_block_algebras(n, ring):
    assert verify_theta_injectivity(n, n, ring, k=2)
    assert theta_injectivity_matrix(n, n, ring, k=2).cols == sum(len(basis(n, 2, t)) for t in range(n // 2 + 1))


def test_group_images_are_coalgebra_maps():
    assert is_coalgebra_map(y(2, 1) + 1, V2)
    assert is_coalgebra_map(parse_group_element("[x1^2,x2^-1]", Z).canon, V2)
    ring = RingSpec.modular(2)
    commutator = parse_group_element("[x1,x2,x3] x4", ring, 4).canon
    assert is_coalgebra_map(commutator, FreeModule(ring, 2), degree_cap=3)


def test_non_units_are_not_coalgebra_maps():
    assert not is_coalgebra_map(y(2, 1), V2)
    assert not is_coalgebra_map(y(2, 1) * 2 + 1 + y(2, 1) * y(2, 2), V2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rigidity(n):
    assert check_rigidity(n)


def test_rigidity_limits():
    with pytest.raises(PreconditionError):
        natural_map_space(4, 4, 4)


def tensor_elements(block):
    words = st.lists(st.integers(1, 2), min_size=0, max_size=2).map(
        lambda blocks: tuple(i for b in blocks for i in (b,) * block)
    )
    return st.tuples(
        st.sampled_from([Z, RingSpec.modular(5)]),
        st.dictionaries(words, st.integers(-3, 3), max_size=4),
    ).map(lambda pair: TensorElement(FreeModule(pair[0], 2), pair[1]))


def _apply_on_side(square, block, left):
    triples = {}
    for (u, w), c in square.terms:
        split = u if left else w
        for (a, b), d in tensor_comult(TensorElement.from_word(square.module, split), block).terms:
            key = (a, b, w) if left else (u, a, b)
            triples[key] = square.module.ring.reduce(triples.get(key, 0) + c * d)
    return {key: c for key, c in triples.items() if c}


@pytest.mark.parametrize("block", [1, 2])
@given(data=st.data())
def test_comultiplication_is_coassociative_and_counital(block, data):
    x = data.draw(tensor_elements(block))
    square = tensor_comult(x, block)
    assert _apply_on_side(square, block, left=True) == _apply_on_side(square, block, left=False)
    left_counit = {w: c for (u, w), c in square.terms if u == ()}
    right_counit = {u: c for (u, w), c in square.terms if w == ()}
    expected = dict(x.items_raw())
    assert left_counit == expected
    assert right_counit == expected
