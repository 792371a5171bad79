"""
The algebra A_n^R[k]: noncommutative polynomials in block generators y_I,
I an ordered k-tuple of distinct indices from 1..n, modulo the relations
y_I y_J = 0 whenever I and J share an index (in particular y_I = 0 when I
has a repeat).

Monomials are admissible sequences of blocks and are stored flattened, so
the block algebra sits inside A^R(y_1..y_n) by concatenating index tuples.
Elements are sparse maps monomial -> nonzero canonical coefficient.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import IndexRangeError, NotAUnitError, ShapeMismatchError
from .exact_linalg import ExactMatrix, Submodule, smith_kernel
from .ring_core import Z, RingSpec, Scalar
from .settings import debug_print


@dataclass(frozen=True)
class Monomial:
    """A product y_{I_1} ... y_{I_t} stored as the flattened index tuple."""

    indices: Tuple[int, ...]
    k: int = 1

    def __post_init__(self):
        if self.k < 1 or len(self.indices) % self.k:
            raise ShapeMismatchError(f"{len(self.indices)} indices do not split into blocks of {self.k}")

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], k: Optional[int] = None) -> "Monomial":
        size = k if k is not None else (len(blocks[0]) if blocks else 1)
        flat: List[int] = []
        for block in blocks:
            if len(block) != size:
                raise ShapeMismatchError(f"Block {tuple(block)} is not of size {size}")
            flat.extend(block)
        return cls(tuple(flat), size)

    @property
    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.indices[i:i + self.k] for i in range(0, len(self.indices), self.k))

    @property
    def degree(self) -> int:
        return len(self.indices) // self.k

    def is_admissible(self) -> bool:
        return len(set(self.indices)) == len(self.indices)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.indices), self.indices)

    def __str__(self) -> str:
        if not self.indices:
            return "1"
        if self.k == 1:
            return ".".join(f"y{i}" for i in self.indices)
        return ".".join("{" + "|".join(str(i) for i in block) + "}" for block in self.blocks)


BlockMonomial = Monomial


def monomial_mul(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """Concatenation, or None (the zero of the algebra) when an index repeats."""
    if a.k != b.k:
        raise ShapeMismatchError(f"Block sizes differ: {a.k} vs {b.k}")
    if set(a.indices) & set(b.indices):
        return None
    return Monomial(a.indices + b.indices, a.k)


Coefficient = Union[int, Scalar]


def format_terms(items: Iterable[Tuple[str, int]], ring: RingSpec) -> str:
    """Render (basis text, coefficient) pairs as `1 + y1.y2 - 3*y2.y1`; empty text is the unit."""
    parts: List[str] = []
    for label, coef in items:
        negative = ring.is_integers and coef < 0
        magnitude = -coef if negative else coef
        if not label:
            body = str(magnitude)
        elif magnitude == 1:
            body = label
        else:
            body = f"{magnitude}*{label}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) if parts else "0"


class AlgebraElement:
    """An element of A_n^R[k]; treat instances as immutable."""

    __slots__ = ("ring", "n", "k", "_terms")

    def __init__(self, ring: RingSpec, n: int, terms: Dict[Monomial, int], k: int = 1):
        self.ring = ring
        self.n = n
        self.k = k
        clean: Dict[Monomial, int] = {}
        for mono, coef in terms.items():
            if mono.k != k:
                raise ShapeMismatchError(f"Monomial {mono} has block size {mono.k}, expected {k}")
            if any(i < 1 or i > n for i in mono.indices):
                raise IndexRangeError(f"Monomial {mono} uses an index outside 1..{n}")
            value = ring.reduce(int(coef))
            if value and mono.is_admissible():
                clean[mono] = ring.reduce(clean.get(mono, 0) + value)
        self._terms = {m: c for m, c in clean.items() if c}

    # Constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingSpec, n: int, k: int = 1) -> "AlgebraElement":
        return cls(ring, n, {}, k)

    @classmethod
    def scalar(cls, ring: RingSpec, n: int, value: Coefficient, k: int = 1) -> "AlgebraElement":
        return cls(ring, n, {Monomial((), k): int(value)}, k)

    @classmethod
    def one(cls, ring: RingSpec, n: int, k: int = 1) -> "AlgebraElement":
        return cls.scalar(ring, n, 1, k)

    @classmethod
    def generator(cls, ring: RingSpec, n: int, block: Union[int, Sequence[int]]) -> "AlgebraElement":
        """y_i for an index, y_I for a block tuple (zero when I repeats an index)."""
        indices = (block,) if isinstance(block, int) else tuple(block)
        return cls(ring, n, {Monomial(indices, len(indices)): 1}, len(indices))

    @classmethod
    def from_monomial(
        cls, ring: RingSpec, n: int, mono: Monomial, coef: Coefficient = 1
    ) -> "AlgebraElement":
        return cls(ring, n, {mono: int(coef)}, mono.k)

    # Inspection ------------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return {m: Scalar(self.ring, c) for m, c in self.items_raw()}

    def items_raw(self) -> List[Tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, mono: Monomial) -> Scalar:
        return Scalar(self.ring, self._terms.get(mono, 0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest block degree of a term; -1 for zero."""
        return max((m.degree for m in self._terms), default=-1)

    def homogeneous(self, t: int) -> "AlgebraElement":
        return AlgebraElement(
            self.ring, self.n, {m: c for m, c in self._terms.items() if m.degree == t}, self.k
        )

    def augmentation(self) -> Scalar:
        return self.coefficient(Monomial((), self.k))

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.terms.items())

    # Arithmetic ------------------------------------------------------------

    def _check_compatible(self, other: "AlgebraElement") -> None:
        self.ring.check_same(other.ring)
        if self.n != other.n or self.k != other.k:
            raise ShapeMismatchError(
                f"Cannot combine A_{self.n}[{self.k}] with A_{other.n}[{other.k}]"
            )

    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            self._check_compatible(other)
            return other
        if isinstance(other, Scalar):
            self.ring.check_same(other.ring)
            return AlgebraElement.scalar(self.ring, self.n, other.value, self.k)
        if isinstance(other, int):
            return AlgebraElement.scalar(self.ring, self.n, other, self.k)
        raise TypeError(f"Cannot combine an algebra element with {type(other).__name__}")

    def __add__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return AlgebraElement(self.ring, self.n, terms, self.k)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.ring, self.n, {m: -c for m, c in self._terms.items()}, self.k)

    def __sub__(self, other) -> "AlgebraElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "AlgebraElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, Scalar)):
            factor = other.value if isinstance(other, Scalar) else other
            return AlgebraElement(
                self.ring, self.n, {m: c * factor for m, c in self._terms.items()}, self.k
            )
        other = self._coerce(other)
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            used = set(m1.indices)
            for m2, c2 in other._terms.items():
                if used.intersection(m2.indices):
                    continue
                product = Monomial(m1.indices + m2.indices, self.k)
                terms[product] = terms.get(product, 0) + c1 * c2
        return AlgebraElement(self.ring, self.n, terms, self.k)

    def __rmul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, Scalar)):
            return self * other
        return self._coerce(other) * self

    def __pow__(self, exponent: int) -> "AlgebraElement":
        return elem_pow(self, exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.n == other.n
            and self.k == other.k
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.n, self.k, tuple(self.items_raw())))

    # Substitution ----------------------------------------------------------

    def map_indices(self, image: Callable[[int], Optional[int]], new_n: int) -> "AlgebraElement":
        """Substitute y_i -> y_image(i); a None image sends the generator to 0."""
        terms: Dict[Monomial, int] = {}
        for mono, coef in self._terms.items():
            mapped = [image(i) for i in mono.indices]
            if any(i is None for i in mapped):
                continue
            target = Monomial(tuple(mapped), self.k)  # type: ignore[arg-type]
            terms[target] = terms.get(target, 0) + coef
        return AlgebraElement(self.ring, new_n, terms, self.k)

    def __str__(self) -> str:
        return format_terms(((str(m) if m.indices else "", c) for m, c in self.items_raw()), self.ring)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.ring}, n={self.n}, k={self.k}, {self})"


# =============================================================================
# Operations
# =============================================================================

def elem_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


def elem_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def algebra_bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b - b * a


def iterated_bracket(items: Sequence[AlgebraElement]) -> AlgebraElement:
    """Left-normed [[a_1, a_2], ..., a_t]."""
    if not items:
        raise ShapeMismatchError("An iterated bracket needs at least one entry")
    result = items[0]
    for item in items[1:]:
        result = algebra_bracket(result, item)
    return result


def shuffle_orders(t: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """(sign, order) pairs of the left-normed bracket expansion on positions 1..t.

    Each subset I of {2..t} contributes (-1)^|I| times the word reading I
    downwards, then 1, then the complement of I upwards.
    """
    tail = list(range(2, t + 1))
    for size in range(len(tail) + 1):
        for chosen in combinations(tail, size):
            rest = [i for i in tail if i not in chosen]
            yield (-1) ** size, tuple(reversed(chosen)) + (1,) + tuple(rest)


BracketEntry = Union[int, Monomial, AlgebraElement]


def _as_elements(
    items: Sequence[BracketEntry], ring: RingSpec, n: Optional[int]
) -> List[AlgebraElement]:
    if all(isinstance(item, AlgebraElement) for item in items):
        return list(items)  # type: ignore[arg-type]
    indices = [i for item in items if isinstance(item, Monomial) for i in item.indices]
    indices += [item for item in items if isinstance(item, int)]
    size = n if n is not None else max(indices, default=0)
    elements = []
    for item in items:
        if isinstance(item, AlgebraElement):
            elements.append(item)
        elif isinstance(item, Monomial):
            elements.append(AlgebraElement.from_monomial(ring, size, item))
        else:
            elements.append(AlgebraElement.generator(ring, size, item))
    return elements


def shuffle_expand(
    items: Sequence[BracketEntry], ring: RingSpec = Z, n: Optional[int] = None
) -> AlgebraElement:
    """Expand [[a_1, ..., a_t]] as a signed sum of ordered products.

    Entries may be algebra elements, monomials or generator indices; the last
    two are placed in A^R(y_1..y_n), n defaulting to the largest index seen.
    """
    if not items:
        raise ShapeMismatchError("shuffle_expand needs at least one entry")
    items = _as_elements(items, ring, n)
    first = items[0]
    total = AlgebraElement.zero(first.ring, first.n, first.k)
    for sign, order in shuffle_orders(len(items)):
        product = items[order[0] - 1]
        for position in order[1:]:
            product = product * items[position - 1]
        total = total + product * sign
    return total


def basis(n: int, k: int, t: int) -> List[Monomial]:
    """Admissible block monomials of degree t, in lexicographic order of indices."""
    if n < 0 or k < 1 or t < 0:
        raise ShapeMismatchError(f"Invalid basis request n={n}, k={k}, t={t}")
    return [Monomial(seq, k) for seq in permutations(range(1, n + 1), k * t)]


def full_basis(n: int, k: int = 1) -> List[Monomial]:
    """Every admissible block monomial, degree by degree."""
    result: List[Monomial] = []
    for t in range(n // k + 1):
        result.extend(basis(n, k, t))
    return result


def augmentation(a: AlgebraElement) -> Scalar:
    return a.augmentation()


def elem_pow(a: AlgebraElement, exponent: int) -> AlgebraElement:
    if exponent < 0:
        return elem_pow(unit_inverse(a), -exponent)
    result = AlgebraElement.one(a.ring, a.n, a.k)
    base = a
    while exponent:
        if exponent & 1:
            result = result * base
        base = base * base
        exponent >>= 1
    return result


def unit_inverse(u: AlgebraElement) -> AlgebraElement:
    """Inverse of an element with unit augmentation; the augmentation ideal is nilpotent."""
    c = u.augmentation()
    if not c.is_unit():
        raise NotAUnitError(f"Augmentation {c} of {u} is not a unit in {u.ring.pretty()}")
    c_inv = c.inverse()
    nilpotent = u * c_inv - 1
    inverse = AlgebraElement.one(u.ring, u.n, u.k)
    power = inverse
    while True:
        power = power * (-nilpotent)
        if power.is_zero():
            break
        inverse = inverse + power
    return inverse * c_inv


def flatten_blocks(a: AlgebraElement) -> AlgebraElement:
    """Image of a block element in A^R(y_1..y_n)."""
    terms = {Monomial(m.indices, 1): c for m, c in a.items_raw()}
    return AlgebraElement(a.ring, a.n, terms, 1)


def coordinates(a: AlgebraElement, monomials: Sequence[Monomial]) -> Tuple[int, ...]:
    return tuple(a.coefficient(m).value for m in monomials)


def element_from_coordinates(
    ring: RingSpec, n: int, monomials: Sequence[Monomial], vector: Sequence[int]
) -> AlgebraElement:
    k = monomials[0].k if monomials else 1
    return AlgebraElement(ring, n, {m: c for m, c in zip(monomials, vector) if c}, k)


# =============================================================================
# Projections
# =============================================================================

def projection_pi(j: int, a: AlgebraElement) -> AlgebraElement:
    """pi_j: y_j -> 0, y_i -> y_i below j, y_i -> y_{i-1} above j."""
    if not 1 <= j <= a.n:
        raise IndexRangeError(f"Projection index {j} outside 1..{a.n}")
    return a.map_indices(lambda i: None if i == j else (i if i < j else i - 1), a.n - 1)


BLOCK_SHIFTS = ("verbatim", "window")


def window_bounds(j: int, l: int, n: int, shift: str) -> Tuple[int, int, int]:
    """(first killed index, last killed index, renumbering step) of a window projection.

    "verbatim" kills x_{j+1}..x_{j+l} and renumbers the generators above it
    down by one, landing on n-1 generators. "window" kills the j-th block
    x_{jl+1}..x_{jl+l} and renumbers down by l, landing on n-l generators.
    """
    if shift not in BLOCK_SHIFTS:
        raise ShapeMismatchError(f"Unknown block shift {shift!r}; use one of {BLOCK_SHIFTS}")
    start = j if shift == "verbatim" else j * l
    if l < 1 or j < 0 or start + l > n:
        raise IndexRangeError(f"Window {start + 1}..{start + l} outside 1..{n}")
    return start + 1, start + l, 1 if shift == "verbatim" else l


def projection_pi_block(j: int, l: int, a: AlgebraElement, shift: str = "verbatim") -> AlgebraElement:
    """Window projection sending the killed generators to 0."""
    low, high, step = window_bounds(j, l, a.n, shift)
    return a.map_indices(
        lambda i: i if i < low else (None if i <= high else i - step), a.n - step
    )


def is_member_L(a: AlgebraElement) -> bool:
    """Equalizer test: pi_1(a) = ... = pi_n(a)."""
    if a.n <= 1:
        return True
    first = projection_pi(1, a)
    return all(projection_pi(j, a) == first for j in range(2, a.n + 1))


def is_member_L_lk(a: AlgebraElement, l: int, n_blocks: int, shift: str = "verbatim") -> bool:
    """Every pi_m(a) is a scalar and the window projections all agree."""
    if a.n != l * n_blocks:
        raise ShapeMismatchError(f"Expected {l * n_blocks} generators, got {a.n}")
    constant = AlgebraElement.scalar(a.ring, a.n - 1, a.augmentation().value, a.k)
    for m in range(1, a.n + 1):
        if projection_pi(m, a) != constant:
            return False
    if n_blocks <= 1:
        return True
    first = projection_pi_block(0, l, a, shift)
    return all(projection_pi_block(j, l, a, shift) == first for j in range(1, n_blocks))


def _projection_matrix(n: int, ring: RingSpec, pairs: Iterable[Tuple[int, int]]) -> ExactMatrix:
    """Rows: (pair, target monomial) coordinates of pi_a - pi_b (b = 0 means pi_a alone)."""
    source = full_basis(n)
    target = full_basis(n - 1)
    target_index = {m: i for i, m in enumerate(target)}
    rows: List[List[int]] = []
    for left, right in pairs:
        block = [[0] * len(source) for _ in target]
        for col, mono in enumerate(source):
            image = projection_pi(left, AlgebraElement.from_monomial(ring, n, mono))
            if right:
                image = image - projection_pi(right, AlgebraElement.from_monomial(ring, n, mono))
            for m, c in image.items_raw():
                block[target_index[m]][col] = c
        rows.extend(block)
    return ExactMatrix.from_rows(ring, rows, len(source))


def equalizer_submodule(n: int, ring: RingSpec) -> Submodule:
    """L_n: kernel of the differences pi_j - pi_{j+1}, in full_basis(n) coordinates."""
    if n <= 1:
        size = len(full_basis(n))
        return Submodule(ring, size, ExactMatrix.identity(ring, size).entries)
    module = smith_kernel(_projection_matrix(n, ring, [(j, j + 1) for j in range(1, n)]))
    debug_print(f"equalizer L_{n} over {ring}: rank {len(module.generators)}")
    return module


def projection_kernel_submodule(n: int, ring: RingSpec) -> Submodule:
    """Gamma_n: the common kernel of all pi_j, in full_basis(n) coordinates."""
    if n == 0:
        return Submodule(ring, 1, ((1,),))
    return smith_kernel(_projection_matrix(n, ring, [(j, 0) for j in range(1, n + 1)]))
