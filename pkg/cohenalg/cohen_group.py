"""
Cohen groups K_n^R and K_n^R(k).

Words are kept as entered (a small expression tree) so that projections and
sections can act letter by letter; equality is decided on the image of a
word under the representation x_I^r -> 1 + r y_I into the units of
A_n^R[k]. The group commutator is [a, b] = a^-1 b^-1 a b, left-normed for
longer brackets.
"""

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .cohen_algebra import AlgebraElement, elem_pow, unit_inverse, window_bounds
from .errors import IndexRangeError, PreconditionError, ShapeMismatchError
from .ring_core import RingSpec, Scalar
from .settings import debug_print

FAITHFULNESS_CAVEAT = "faithfulness-unproven"
BLOCK_SHIFT_CAVEAT = "block-projection-shift-verbatim"


# =============================================================================
# Word trees
# =============================================================================

@dataclass(frozen=True)
class Letter:
    generator: Tuple[int, ...]
    exponent: Scalar


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Commutator:
    entries: Tuple["Node", ...]


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Identity:
    pass


Node = Union[Letter, Product, Commutator, Power, Identity]
IDENTITY = Identity()


def _format_letter(letter: Letter) -> str:
    if len(letter.generator) == 1:
        body = f"x{letter.generator[0]}"
    else:
        body = "{" + "|".join(str(i) for i in letter.generator) + "}"
    value = letter.exponent.value
    return body if value == 1 else f"{body}^{value}"


def format_node(node: Node) -> str:
    if isinstance(node, Letter):
        return _format_letter(node)
    if isinstance(node, Identity):
        return "1"
    if isinstance(node, Product):
        return " ".join(
            f"({format_node(f)})" if isinstance(f, Product) else format_node(f) for f in node.factors
        )
    if isinstance(node, Commutator):
        return "[" + ",".join(format_node(e) for e in node.entries) + "]"
    base = format_node(node.base)
    if isinstance(node.base, (Product, Letter)):
        base = f"({base})"
    return f"{base}^{node.exponent}"


def simplify(node: Node) -> Node:
    """Drop identity factors; a commutator or power of the identity is the identity."""
    if isinstance(node, (Letter, Identity)):
        return node
    if isinstance(node, Product):
        return join_product([simplify(f) for f in node.factors])
    if isinstance(node, Commutator):
        entries = tuple(simplify(e) for e in node.entries)
        if any(isinstance(e, Identity) for e in entries):
            return IDENTITY
        return Commutator(entries)
    base = simplify(node.base)
    if isinstance(base, Identity) or node.exponent == 0:
        return IDENTITY
    if node.exponent == 1:
        return base
    return make_power(base, node.exponent)


def join_product(nodes: Sequence[Node]) -> Node:
    """Product of nodes with nested products flattened and identities dropped."""
    factors: List[Node] = []
    for node in nodes:
        if isinstance(node, Product):
            factors.extend(node.factors)
        elif not isinstance(node, Identity):
            factors.append(node)
    if not factors:
        return IDENTITY
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def make_power(base: Node, exponent: int) -> Node:
    """Powers of letters fold into the letter exponent; nested powers multiply."""
    if isinstance(base, Letter):
        return Letter(base.generator, base.exponent * exponent)
    if isinstance(base, Power):
        return make_power(base.base, base.exponent * exponent)
    return Power(base, exponent)


def invert_node(node: Node) -> Node:
    if isinstance(node, Letter):
        return Letter(node.generator, -node.exponent)
    if isinstance(node, Identity):
        return node
    if isinstance(node, Product):
        return Product(tuple(invert_node(f) for f in reversed(node.factors)))
    if isinstance(node, Power):
        return Power(node.base, -node.exponent)
    return Power(node, -1)


def _map_node(node: Node, image: Callable[[Tuple[int, ...]], Optional[Tuple[int, ...]]]) -> Node:
    if isinstance(node, Letter):
        target = image(node.generator)
        return IDENTITY if target is None else Letter(target, node.exponent)
    if isinstance(node, Identity):
        return node
    if isinstance(node, Product):
        return Product(tuple(_map_node(f, image) for f in node.factors))
    if isinstance(node, Commutator):
        return Commutator(tuple(_map_node(e, image) for e in node.entries))
    return Power(_map_node(node.base, image), node.exponent)


@dataclass(frozen=True)
class GroupWord:
    """A word in K_n^R(k) as entered; k = 1 gives K_n^R."""

    ring: RingSpec
    n: int
    k: int
    expr: Node

    def __post_init__(self):
        self._validate(self.expr)

    def _validate(self, node: Node) -> None:
        if isinstance(node, Letter):
            node.exponent.ring.check_same(self.ring)
            if len(node.generator) != self.k:
                raise ShapeMismatchError(
                    f"Generator {node.generator} is not a block of size {self.k}"
                )
            if any(i < 1 or i > self.n for i in node.generator):
                raise IndexRangeError(f"Generator {node.generator} uses an index outside 1..{self.n}")
        elif isinstance(node, Product):
            for f in node.factors:
                self._validate(f)
        elif isinstance(node, Commutator):
            if len(node.entries) < 2:
                raise ShapeMismatchError("A commutator needs at least two entries")
            for e in node.entries:
                self._validate(e)
        elif isinstance(node, Power):
            self._validate(node.base)

    @classmethod
    def identity(cls, ring: RingSpec, n: int, k: int = 1) -> "GroupWord":
        return cls(ring, n, k, IDENTITY)

    @classmethod
    def letter(cls, ring: RingSpec, n: int, generator: Union[int, Sequence[int]], exponent: int = 1) -> "GroupWord":
        gen = (generator,) if isinstance(generator, int) else tuple(generator)
        return cls(ring, n, len(gen), Letter(gen, ring(exponent)))

    def substitute(
        self, image: Callable[[Tuple[int, ...]], Optional[Tuple[int, ...]]], new_n: int
    ) -> "GroupWord":
        return GroupWord(self.ring, new_n, self.k, simplify(_map_node(self.expr, image)))

    def __str__(self) -> str:
        return format_node(self.expr)


def rep(word: GroupWord) -> AlgebraElement:
    """Image of a word in the units of A_n^R[k]."""

    def evaluate(node: Node) -> AlgebraElement:
        if isinstance(node, Letter):
            y = AlgebraElement.generator(word.ring, word.n, node.generator)
            return y * node.exponent + 1
        if isinstance(node, Identity):
            return AlgebraElement.one(word.ring, word.n, word.k)
        if isinstance(node, Product):
            result = AlgebraElement.one(word.ring, word.n, word.k)
            for f in node.factors:
                result = result * evaluate(f)
            return result
        if isinstance(node, Commutator):
            result = evaluate(node.entries[0])
            for entry in node.entries[1:]:
                right = evaluate(entry)
                result = unit_inverse(result) * unit_inverse(right) * result * right
            return result
        return elem_pow(evaluate(node.base), node.exponent)

    return evaluate(word.expr)


@dataclass(frozen=True, eq=False)
class GroupElement:
    word: GroupWord
    canon: AlgebraElement

    @classmethod
    def from_word(cls, word: GroupWord) -> "GroupElement":
        return cls(word, rep(word))

    @property
    def ring(self) -> RingSpec:
        return self.word.ring

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def k(self) -> int:
        return self.word.k

    def _check_compatible(self, other: "GroupElement") -> None:
        self.ring.check_same(other.ring)
        if (self.n, self.k) != (other.n, other.k):
            raise ShapeMismatchError(
                f"Cannot combine K_{self.n}({self.k}) with K_{other.n}({other.k})"
            )

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check_compatible(other)
        word = GroupWord(self.ring, self.n, self.k, join_product((self.word.expr, other.word.expr)))
        return GroupElement(word, self.canon * other.canon)

    def inverse(self) -> "GroupElement":
        word = GroupWord(self.ring, self.n, self.k, invert_node(self.word.expr))
        return GroupElement(word, unit_inverse(self.canon))

    def __pow__(self, exponent: int) -> "GroupElement":
        return group_pow(self, exponent)

    def is_identity(self) -> bool:
        return self.canon == AlgebraElement.one(self.ring, self.n, self.k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.canon == other.canon

    def __hash__(self) -> int:
        return hash(self.canon)

    def __str__(self) -> str:
        return str(self.word)


# =============================================================================
# Group operations
# =============================================================================

def group_element(word: GroupWord) -> GroupElement:
    return GroupElement.from_word(word)


def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def group_inv(a: GroupElement) -> GroupElement:
    return a.inverse()


def group_equal(a: GroupElement, b: GroupElement) -> bool:
    a._check_compatible(b)
    return a == b


def group_pow(g: GroupElement, exponent: int) -> GroupElement:
    word = GroupWord(g.ring, g.n, g.k, simplify(Power(g.word.expr, exponent)))
    return GroupElement(word, elem_pow(g.canon, exponent))


def group_commutator(elements: Sequence[GroupElement]) -> GroupElement:
    """Left-normed [[g_1, g_2], ..., g_t]."""
    if len(elements) < 2:
        raise ShapeMismatchError("A group commutator needs at least two entries")
    first = elements[0]
    for other in elements[1:]:
        first._check_compatible(other)
    word = GroupWord(first.ring, first.n, first.k, Commutator(tuple(g.word.expr for g in elements)))
    canon = first.canon
    for other in elements[1:]:
        canon = unit_inverse(canon) * unit_inverse(other.canon) * canon * other.canon
    return GroupElement(word, canon)


def faithfulness_proven(ring: RingSpec, k: int) -> bool:
    """The representation is known to be faithful for k = 1, over Z, and over Z/p^r."""
    return k == 1 or ring.is_integers or ring.prime_power() is not None


def caveats_for(ring: RingSpec, k: int) -> List[str]:
    return [] if faithfulness_proven(ring, k) else [FAITHFULNESS_CAVEAT]


# =============================================================================
# Projections and sections
# =============================================================================

def _reindex(g: GroupElement, image: Callable[[int], Optional[int]], new_n: int) -> GroupElement:
    def block_image(generator: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        mapped = [image(i) for i in generator]
        if any(i is None for i in mapped):
            return None
        return tuple(mapped)  # type: ignore[arg-type]

    return GroupElement.from_word(g.word.substitute(block_image, new_n))


def proj_p(j: int, g: GroupElement) -> GroupElement:
    """p_j: x_j -> 1, x_i -> x_i below j, x_i -> x_{i-1} above j."""
    if not 1 <= j <= g.n:
        raise IndexRangeError(f"Projection index {j} outside 1..{g.n}")
    return _reindex(g, lambda i: None if i == j else (i if i < j else i - 1), g.n - 1)


def inject_s(j: int, g: GroupElement) -> GroupElement:
    """s_j: x_i -> x_i below j, x_i -> x_{i+1} from j on."""
    if not 1 <= j <= g.n + 1:
        raise IndexRangeError(f"Section index {j} outside 1..{g.n + 1}")
    return _reindex(g, lambda i: i if i < j else i + 1, g.n + 1)


def block_proj(j: int, l: int, g: GroupElement, shift: str = "verbatim") -> GroupElement:
    """p_{j+{1..l}}: kill a window of l generators (see window_bounds for the shift modes)."""
    low, high, step = window_bounds(j, l, g.n, shift)
    return _reindex(g, lambda i: i if i < low else (None if i <= high else i - step), g.n - step)


def _faces_agree(g: GroupElement) -> bool:
    if g.n <= 1:
        return True
    first = proj_p(1, g)
    return all(proj_p(j, g) == first for j in range(2, g.n + 1))


def is_member_H(g: GroupElement, n: Optional[int] = None) -> bool:
    """Membership in the equalizer H_n of p_1, ..., p_n."""
    if n is not None and g.n != n:
        raise ShapeMismatchError(f"Word on {g.n} generators tested against H_{n}")
    if g.k != 1:
        raise ShapeMismatchError("H_n lives in K_n; use is_member_H_lk for block words")
    return _faces_agree(g)


def is_member_H_lk(g: GroupElement, l: int, k: int, n: int, shift: str = "verbatim") -> bool:
    """Membership in H_n^(l),(k) inside K_{ln}(k)."""
    if g.n != l * n:
        raise ShapeMismatchError(f"Expected a word on {l * n} generators, got {g.n}")
    if g.k != k:
        raise ShapeMismatchError(f"Expected block size {k}, got {g.k}")
    for m in range(1, g.n + 1):
        if not proj_p(m, g).is_identity():
            debug_print(f"p_{m} does not kill {g}")
            return False
    if n <= 1:
        return True
    first = block_proj(0, l, g, shift)
    return all(block_proj(j, l, g, shift) == first for j in range(1, n))


def is_member_H_l(g: GroupElement, l: int, n: int, shift: str = "verbatim") -> bool:
    """Membership in H_n^(l) inside K_{ln}."""
    return is_member_H_lk(g, l, 1, n, shift)


def d_projection(g: GroupElement) -> GroupElement:
    """d_n: H_n -> H_{n-1}, the common value of the face projections."""
    if g.n < 1:
        raise PreconditionError("d is not defined on K_0")
    if not _faces_agree(g):
        raise PreconditionError(f"{g} is not in the equalizer: its face projections differ")
    return proj_p(1, g)


def descend(g: GroupElement, k: int) -> GroupElement:
    """d_{k,n} = d_{k+1} o ... o d_n."""
    if k > g.n or k < 0:
        raise IndexRangeError(f"Cannot descend from {g.n} to {k} generators")
    while g.n > k:
        g = d_projection(g)
    return g


def _colex(subsets: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    return sorted(subsets, key=lambda s: tuple(reversed(s)))


def lift_H(alpha: GroupElement, k: int, n: int) -> GroupElement:
    """alpha_{k,n}: the product over i_1 < ... < i_{n-k} of s_{i_{n-k}} ... s_{i_1} alpha.

    Subsets are taken in lexicographic order from the right. Requires alpha in
    H_k with d_k(alpha) = 1.
    """
    if alpha.n != k:
        raise ShapeMismatchError(f"alpha lives on {alpha.n} generators, expected {k}")
    if n < k:
        raise PreconditionError(f"Cannot lift from {k} to {n} generators")
    if not is_member_H(alpha):
        raise PreconditionError(f"{alpha} is not in H_{k}")
    if k >= 1 and not d_projection(alpha).is_identity():
        raise PreconditionError(f"d_{k}({alpha}) is not the identity")
    if n == k:
        return alpha
    factors: List[GroupElement] = []
    for subset in _colex(list(combinations(range(1, n + 1), n - k))):
        image = alpha
        for index in subset:
            image = inject_s(index, image)
        factors.append(image)
    word = GroupWord(alpha.ring, n, alpha.k, join_product([f.word.expr for f in factors]))
    canon = AlgebraElement.one(alpha.ring, n, alpha.k)
    for f in factors:
        canon = canon * f.canon
    debug_print(f"lifted {alpha} to {len(factors)} factors on {n} generators")
    return GroupElement(word, canon)


# =============================================================================
# Random words
# =============================================================================

def random_letter(rng: random.Random, ring: RingSpec, n: int, k: int, low: int = -5, high: int = 5) -> Letter:
    generator = tuple(rng.randint(1, n) for _ in range(k))
    return Letter(generator, ring(rng.randint(low, high)))


def random_word(
    rng: random.Random, ring: RingSpec, n: int, k: int = 1, length: int = 4, low: int = -5, high: int = 5
) -> GroupWord:
    """A product of letters and commutators of letters."""
    factors: List[Node] = []
    for _ in range(length):
        if rng.random() < 0.3:
            size = rng.randint(2, 3)
            factors.append(Commutator(tuple(random_letter(rng, ring, n, k, low, high) for _ in range(size))))
        else:
            factors.append(random_letter(rng, ring, n, k, low, high))
    return GroupWord(ring, n, k, factors[0] if len(factors) == 1 else Product(tuple(factors)))
