"""
Algebra elements as natural transformations C(V)^{(x)n} -> T(V) on a concrete
free module V = R^m.

A basis element of C(V)^{(x)n} = (R + V)^{(x)n} is written as a slot label:
a tuple of length n whose entries are 0 (the unit of C(V)) or a basis index
1..m. A word of T(V) is a tuple of basis indices; for block algebras the
codomain is T(V^{(x)k}) and words have length divisible by k. No signs appear
anywhere: everything is concentrated in even degree.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cohen_algebra import AlgebraElement, Monomial, format_terms, full_basis, shuffle_expand
from .errors import PreconditionError, ShapeMismatchError, TruncationError
from .exact_linalg import ExactMatrix, Submodule, invariant_factors, rank, smith_kernel, submodule_equal
from .ring_core import Z, RingSpec, Scalar
from .settings import MAX_RIGIDITY_DEGREE, MAX_RIGIDITY_DIM, debug_print

Word = Tuple[int, ...]
SlotLabel = Tuple[int, ...]


@dataclass(frozen=True)
class FreeModule:
    ring: RingSpec
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeMismatchError(f"A free module needs dimension >= 1, got {self.dim}")

    def words(self, length: int) -> List[Word]:
        return list(product(range(1, self.dim + 1), repeat=length))

    def words_up_to(self, cap: int, block: int = 1) -> List[Word]:
        result: List[Word] = []
        for length in range(0, cap + 1, block):
            result.extend(self.words(length))
        return result


def _word_text(word: Word) -> str:
    return ".".join(f"v{i}" for i in word)


class TensorElement:
    """An element of T(V) as a map word -> nonzero coefficient."""

    __slots__ = ("module", "_terms")

    def __init__(self, module: FreeModule, terms: Dict[Word, int]):
        self.module = module
        ring = module.ring
        clean: Dict[Word, int] = {}
        for word, coef in terms.items():
            if any(i < 1 or i > module.dim for i in word):
                raise ShapeMismatchError(f"Word {word} uses a basis index outside 1..{module.dim}")
            value = ring.reduce(int(coef))
            if value:
                clean[tuple(word)] = ring.reduce(clean.get(tuple(word), 0) + value)
        self._terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def zero(cls, module: FreeModule) -> "TensorElement":
        return cls(module, {})

    @classmethod
    def unit(cls, module: FreeModule) -> "TensorElement":
        return cls(module, {(): 1})

    @classmethod
    def from_word(cls, module: FreeModule, word: Sequence[int], coef: int = 1) -> "TensorElement":
        return cls(module, {tuple(word): coef})

    @classmethod
    def vector(cls, module: FreeModule, coefficients: Sequence[int]) -> "TensorElement":
        if len(coefficients) != module.dim:
            raise ShapeMismatchError(f"Vector of length {len(coefficients)} in a module of rank {module.dim}")
        return cls(module, {(i + 1,): c for i, c in enumerate(coefficients) if c})

    def items_raw(self) -> List[Tuple[Word, int]]:
        return sorted(self._terms.items(), key=lambda item: (len(item[0]), item[0]))

    def coefficient(self, word: Sequence[int]) -> Scalar:
        return Scalar(self.module.ring, self._terms.get(tuple(word), 0))

    def counit(self) -> Scalar:
        return self.coefficient(())

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def _check(self, other: "TensorElement") -> None:
        if self.module != other.module:
            raise ShapeMismatchError(f"Tensor elements over different modules: {self.module} vs {other.module}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) + c
        return TensorElement(self.module, terms)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.module, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, other) -> "TensorElement":
        if isinstance(other, int):
            return TensorElement(self.module, {w: c * other for w, c in self._terms.items()})
        self._check(other)
        terms: Dict[Word, int] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                terms[w1 + w2] = terms.get(w1 + w2, 0) + c1 * c2
        return TensorElement(self.module, terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.module == other.module and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.module, tuple(self.items_raw())))

    def __str__(self) -> str:
        return format_terms(((_word_text(w), c) for w, c in self.items_raw()), self.module.ring)

    def __repr__(self) -> str:
        return f"TensorElement(dim={self.module.dim}, {self})"


@dataclass(frozen=True)
class TensorSquare:
    """An element of T(V) (x) T(V): map (left word, right word) -> coefficient."""

    module: FreeModule
    terms: Tuple[Tuple[Tuple[Word, Word], int], ...]

    @classmethod
    def from_dict(cls, module: FreeModule, terms: Dict[Tuple[Word, Word], int]) -> "TensorSquare":
        ring = module.ring
        cleaned = {pair: ring.reduce(c) for pair, c in terms.items() if ring.reduce(c)}
        return cls(module, tuple(sorted(cleaned.items())))

    def as_dict(self) -> Dict[Tuple[Word, Word], int]:
        return dict(self.terms)

    def __str__(self) -> str:
        def label(pair: Tuple[Word, Word]) -> str:
            left, right = pair
            return f"{_word_text(left) or '1'} (x) {_word_text(right) or '1'}"

        return format_terms(((label(p), c) for p, c in self.terms), self.module.ring)


def _comult_word(word: Word, block: int) -> Iterable[Tuple[Word, Word]]:
    pieces = [word[i:i + block] for i in range(0, len(word), block)]
    count = len(pieces)
    for size in range(count + 1):
        for chosen in combinations(range(count), size):
            left = tuple(i for p in chosen for i in pieces[p])
            right = tuple(i for p in range(count) if p not in chosen for i in pieces[p])
            yield left, right


def tensor_comult(x: TensorElement, block: int = 1) -> TensorSquare:
    """Shuffle coproduct making the letters (blocks of `block` letters) primitive."""
    terms: Dict[Tuple[Word, Word], int] = {}
    for word, coef in x.items_raw():
        if len(word) % block:
            raise ShapeMismatchError(f"Word {word} is not a word in blocks of {block}")
        for pair in _comult_word(word, block):
            terms[pair] = terms.get(pair, 0) + coef
    return TensorSquare.from_dict(x.module, terms)


def tensor_product(a: TensorElement, b: TensorElement) -> TensorSquare:
    terms: Dict[Tuple[Word, Word], int] = {}
    for w1, c1 in a.items_raw():
        for w2, c2 in b.items_raw():
            terms[(w1, w2)] = terms.get((w1, w2), 0) + c1 * c2
    return TensorSquare.from_dict(a.module, terms)


# =============================================================================
# Inputs and evaluation
# =============================================================================

@dataclass(frozen=True)
class CTensorInput:
    """n slots of C(V) = R + V; None is the unit, otherwise a coefficient vector."""

    module: FreeModule
    slots: Tuple[Optional[Tuple[int, ...]], ...]

    def __post_init__(self):
        for slot in self.slots:
            if slot is not None and len(slot) != self.module.dim:
                raise ShapeMismatchError(f"Slot vector {list(slot)} does not have {self.module.dim} entries")

    def expand(self) -> Dict[SlotLabel, int]:
        """Multilinear expansion into slot labels."""
        choices = []
        for slot in self.slots:
            if slot is None:
                choices.append([(0, 1)])
            else:
                choices.append([(i + 1, c) for i, c in enumerate(slot) if c])
        result: Dict[SlotLabel, int] = {}
        for combo in product(*choices):
            coef = 1
            for _, c in combo:
                coef *= c
            label = tuple(i for i, _ in combo)
            result[label] = result.get(label, 0) + coef
        return result

    def __str__(self) -> str:
        return " (x) ".join(
            "1" if slot is None else "[" + ",".join(str(c) for c in slot) + "]" for slot in self.slots
        )


def domain_basis(n: int, module: FreeModule) -> List[SlotLabel]:
    return list(product(range(module.dim + 1), repeat=n))


def _theta_on_label(a: AlgebraElement, label: SlotLabel) -> Dict[Word, int]:
    """theta(a) on one slot label: a monomial survives iff its indices are exactly the vector slots."""
    support = frozenset(p + 1 for p, i in enumerate(label) if i)
    result: Dict[Word, int] = {}
    for mono, coef in a.items_raw():
        if len(mono.indices) == len(support) and support.issuperset(mono.indices):
            word = tuple(label[i - 1] for i in mono.indices)
            result[word] = result.get(word, 0) + coef
    return result


def theta_eval(a: AlgebraElement, module: FreeModule, value: CTensorInput) -> TensorElement:
    """theta_n(a) applied to an element of C(V)^{(x)n}."""
    a.ring.check_same(module.ring)
    if len(value.slots) != a.n:
        raise ShapeMismatchError(f"Input has {len(value.slots)} slots, the element lives on {a.n} generators")
    terms: Dict[Word, int] = {}
    for label, coef in value.expand().items():
        for word, c in _theta_on_label(a, label).items():
            terms[word] = terms.get(word, 0) + coef * c
    return TensorElement(module, terms)


@dataclass(frozen=True)
class LinearMapMatrix:
    """Matrix of a map C(V)^{(x)n} -> J_cap(V^{(x)block}); columns are slot labels."""

    module: FreeModule
    n: int
    block: int
    cap: int
    domain: Tuple[SlotLabel, ...]
    codomain: Tuple[Word, ...]
    matrix: ExactMatrix

    def column(self, label: SlotLabel) -> Dict[Word, int]:
        j = self.domain.index(label)
        return {w: c for w, c in zip(self.codomain, self.matrix.column(j)) if c}

    def columns(self) -> Dict[SlotLabel, Dict[Word, int]]:
        return {label: self.column(label) for label in self.domain}


def _build_map(
    module: FreeModule, n: int, block: int, cap: int, columns: Dict[SlotLabel, Dict[Word, int]]
) -> LinearMapMatrix:
    domain = tuple(domain_basis(n, module))
    codomain = tuple(module.words_up_to(cap, block))
    row_of = {w: i for i, w in enumerate(codomain)}
    rows = [[0] * len(domain) for _ in codomain]
    for j, label in enumerate(domain):
        for word, coef in columns.get(label, {}).items():
            if word not in row_of:
                raise TruncationError(
                    f"Output word of length {len(word)} exceeds the degree cap {cap}; raise the cap"
                )
            rows[row_of[word]][j] += coef
    return LinearMapMatrix(
        module, n, block, cap, domain, codomain, ExactMatrix.from_rows(module.ring, rows, len(domain))
    )


def theta_matrix(a: AlgebraElement, module: FreeModule, degree_cap: Optional[int] = None) -> LinearMapMatrix:
    """Matrix of theta_n(a); the cap defaults to the longest monomial of a."""
    a.ring.check_same(module.ring)
    cap = degree_cap if degree_cap is not None else max((len(m.indices) for m in a.terms), default=0)
    columns = {label: _theta_on_label(a, label) for label in domain_basis(a.n, module)}
    return _build_map(module, a.n, a.k, cap, columns)


def counit_unit_matrix(n: int, module: FreeModule, degree_cap: int = 0, block: int = 1) -> LinearMapMatrix:
    """eta o epsilon, the unit of the convolution algebra."""
    return _build_map(module, n, block, degree_cap, {(0,) * n: {(): 1}})


def _splits(label: SlotLabel) -> Iterable[Tuple[SlotLabel, SlotLabel]]:
    """The coproduct of a slot label: every way to send each vector slot left or right."""
    positions = [p for p, i in enumerate(label) if i]
    for size in range(len(positions) + 1):
        for chosen in combinations(positions, size):
            left = tuple(i if p in chosen else 0 for p, i in enumerate(label))
            right = tuple(0 if p in chosen else i for p, i in enumerate(label))
            yield left, right


def convolution(f: LinearMapMatrix, g: LinearMapMatrix) -> LinearMapMatrix:
    """f * g = mu o (f (x) g) o psi on the common domain; codomain cap is the larger cap."""
    if (f.module, f.n, f.block) != (g.module, g.n, g.block):
        raise ShapeMismatchError("Convolution needs maps on the same domain and codomain")
    cap = max(f.cap, g.cap)
    f_cols, g_cols = f.columns(), g.columns()
    columns: Dict[SlotLabel, Dict[Word, int]] = {}
    for label in f.domain:
        out: Dict[Word, int] = {}
        for left, right in _splits(label):
            for w1, c1 in f_cols[left].items():
                for w2, c2 in g_cols[right].items():
                    out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        columns[label] = out
    return _build_map(f.module, f.n, f.block, cap, columns)


def is_coalgebra_map(a: AlgebraElement, module: FreeModule, degree_cap: Optional[int] = None) -> bool:
    """psi o theta(a) = (theta(a) (x) theta(a)) o psi and epsilon o theta(a) = epsilon.

    Checked on every slot label with at most `degree_cap` vector slots
    (default: all of them).
    """
    a.ring.check_same(module.ring)
    cap = degree_cap if degree_cap is not None else a.n
    for label in domain_basis(a.n, module):
        if sum(1 for i in label if i) > cap:
            continue
        image = TensorElement(module, _theta_on_label(a, label))
        if image.counit().value != (0 if any(label) else 1):
            debug_print(f"counit fails on slot label {label}")
            return False
        expected: Dict[Tuple[Word, Word], int] = {}
        for left, right in _splits(label):
            lhs = TensorElement(module, _theta_on_label(a, left))
            rhs = TensorElement(module, _theta_on_label(a, right))
            for pair, c in tensor_product(lhs, rhs).terms:
                expected[pair] = expected.get(pair, 0) + c
        if tensor_comult(image, a.k) != TensorSquare.from_dict(module, expected):
            debug_print(f"comultiplication fails on slot label {label}")
            return False
    return True


# =============================================================================
# Primitives and Lie elements
# =============================================================================

def _reduced_comult_matrix(module: FreeModule, columns: Sequence[Word]) -> ExactMatrix:
    """Rows: pairs (u, w) with both sides nonempty; entries: coefficient of u (x) w in psi(column)."""
    row_of: Dict[Tuple[Word, Word], int] = {}
    entries: Dict[Tuple[int, int], int] = {}
    for j, word in enumerate(columns):
        for left, right in _comult_word(word, 1):
            if not left or not right:
                continue
            i = row_of.setdefault((left, right), len(row_of))
            entries[(i, j)] = entries.get((i, j), 0) + 1
    rows = [[0] * len(columns) for _ in row_of]
    for (i, j), c in entries.items():
        rows[i][j] = c
    return ExactMatrix.from_rows(module.ring, rows, len(columns))


def primitives_basis(module: FreeModule, q: int) -> Submodule:
    """P(T(V)) in tensor length q: the kernel of the reduced coproduct on V^{(x)q}.

    Length 0 has no primitives: psi(1) = 1 (x) 1.
    """
    if q == 0:
        return Submodule(module.ring, 1, ())
    return smith_kernel(_reduced_comult_matrix(module, module.words(q)))


def multilinear_words(n: int) -> List[Word]:
    """Basis of gamma_n: the permutation words x_s(1)...x_s(n), lexicographic."""
    return list(permutations(range(1, n + 1)))


def gamma_submodule(n: int, ring: RingSpec = Z) -> Submodule:
    """gamma_n in V-bar^{(x)n}; coordinates are over multilinear_words(n)."""
    size = len(multilinear_words(n))
    return Submodule(ring, size, ExactMatrix.identity(ring, size).entries)


def lie_submodule(n: int, ring: RingSpec = Z) -> Submodule:
    """Span of the left-normed brackets [[x_s(1), ..., x_s(n)]] in gamma_n coordinates."""
    words = multilinear_words(n)
    monomials = [Monomial(w) for w in words]
    generators = []
    for order in words:
        expanded = shuffle_expand(list(order), ring, n)
        generators.append(tuple(expanded.coefficient(m).value for m in monomials))
    return Submodule.span(ring, len(words), generators)


def primitive_restriction_matrix(n: int, ring: RingSpec = Z) -> ExactMatrix:
    """The reduced coproduct restricted to gamma_n."""
    return _reduced_comult_matrix(FreeModule(ring, n), multilinear_words(n))


def check_lie_equals_gamma_cap_primitives(n: int, ring: RingSpec = Z) -> bool:
    """gamma_n intersected with the primitives equals Lie(n), as submodules."""
    primitives_in_gamma = smith_kernel(primitive_restriction_matrix(n, ring))
    equal = submodule_equal(primitives_in_gamma, lie_submodule(n, ring))
    debug_print(f"gamma_{n} cap P over {ring}: rank {len(primitives_in_gamma)}, equal to Lie: {equal}")
    return equal


def primitive_cokernel_invariants(n: int) -> Tuple[int, ...]:
    """Nonzero invariant factors of the reduced coproduct on gamma_n over Z (all 1: no torsion)."""
    return invariant_factors(primitive_restriction_matrix(n, Z))


# =============================================================================
# Injectivity of theta
# =============================================================================

def theta_injectivity_matrix(n: int, m: int, ring: RingSpec = Z, k: int = 1) -> ExactMatrix:
    """Evaluate every basis monomial on the designated inputs.

    For J a subset of 1..n the input puts x_j in slot j for j in J and the
    unit elsewhere; rows are (J, output word), columns the basis monomials.
    """
    if m < n:
        raise PreconditionError(f"Injectivity needs a module of rank >= n (got m={m}, n={n})")
    monomials = full_basis(n, k)
    rows_of: Dict[Tuple[Tuple[int, ...], Word], int] = {}
    entries: Dict[Tuple[int, int], int] = {}
    for size in range(n + 1):
        for subset in combinations(range(1, n + 1), size):
            label = tuple(p if p in subset else 0 for p in range(1, n + 1))
            for j, mono in enumerate(monomials):
                element = AlgebraElement.from_monomial(ring, n, mono)
                for word, c in _theta_on_label(element, label).items():
                    i = rows_of.setdefault((subset, word), len(rows_of))
                    entries[(i, j)] = entries.get((i, j), 0) + c
    rows = [[0] * len(monomials) for _ in rows_of]
    for (i, j), c in entries.items():
        rows[i][j] = c
    return ExactMatrix.from_rows(ring, rows, len(monomials))


def verify_theta_injectivity(n: int, m: int, ring: RingSpec = Z, k: int = 1) -> bool:
    matrix = theta_injectivity_matrix(n, m, ring, k)
    return rank(matrix) == matrix.cols


# =============================================================================
# Rigidity of natural maps between tensor powers
# =============================================================================

def _constraint_maps(dim: int) -> List[List[List[int]]]:
    """Adjacent basis swaps and the transvection e_1 -> e_1 + e_2, as matrices P[row][col]."""
    maps = []
    for i in range(dim - 1):
        swap = [[1 if r == c else 0 for c in range(dim)] for r in range(dim)]
        swap[i][i] = swap[i + 1][i + 1] = 0
        swap[i][i + 1] = swap[i + 1][i] = 1
        maps.append(swap)
    if dim >= 2:
        shear = [[1 if r == c else 0 for c in range(dim)] for r in range(dim)]
        shear[1][0] = 1
        maps.append(shear)
    return maps


def _tensor_column(matrix: List[List[int]], word: Word) -> Dict[Word, int]:
    """Column `word` of matrix^{(x)len(word)}."""
    supports = [[(r + 1, matrix[r][c - 1]) for r in range(len(matrix)) if matrix[r][c - 1]] for c in word]
    column: Dict[Word, int] = {}
    for combo in product(*supports):
        coef = 1
        for _, value in combo:
            coef *= value
        key = tuple(r for r, _ in combo)
        column[key] = column.get(key, 0) + coef
    return column


def _tensor_row(matrix: List[List[int]], word: Word) -> Dict[Word, int]:
    transposed = [list(col) for col in zip(*matrix)]
    return _tensor_column(transposed, word)


def _unknowns(module: FreeModule, n: int, m: int) -> List[Tuple[Word, Word]]:
    """Entries F[w', w] allowed by diagonal scalings: equal letter content."""
    by_content: Dict[Tuple[Tuple[int, int], ...], List[Word]] = {}
    for w in module.words(n):
        by_content.setdefault(tuple(sorted(Counter(w).items())), []).append(w)
    pairs = []
    for target in module.words(m):
        for source in by_content.get(tuple(sorted(Counter(target).items())), []):
            pairs.append((target, source))
    return pairs


def natural_map_space(dim: int, n: int, m: int, ring: RingSpec = Z) -> Tuple[List[Tuple[Word, Word]], Submodule]:
    """Maps V^{(x)n} -> V^{(x)m} commuting with phi^{(x)} for the generating substitutions.

    Diagonal scalings by distinct primes restrict F to pairs of words with the
    same letter content; basis swaps and one transvection then cut out the
    rest. Returns the unknown pairs and the solution module in their coordinates.
    """
    if n > MAX_RIGIDITY_DEGREE or dim > MAX_RIGIDITY_DIM:
        raise PreconditionError(
            f"Brute-force rigidity is limited to n <= {MAX_RIGIDITY_DEGREE}, dim <= {MAX_RIGIDITY_DIM}"
        )
    module = FreeModule(ring, dim)
    unknowns = _unknowns(module, n, m)
    index = {pair: i for i, pair in enumerate(unknowns)}
    if not unknowns:
        return unknowns, Submodule(ring, 0, ())
    equations = set()
    for phi in _constraint_maps(dim):
        for target in module.words(m):
            phi_row = _tensor_row(phi, target)
            for source in module.words(n):
                row: Dict[int, int] = {}
                # (F phi^n)[target, source] - (phi^m F)[target, source]
                for w, c in _tensor_column(phi, source).items():
                    if (target, w) in index:
                        row[index[(target, w)]] = row.get(index[(target, w)], 0) + c
                for v, c in phi_row.items():
                    if (v, source) in index:
                        row[index[(v, source)]] = row.get(index[(v, source)], 0) - c
                cleaned = tuple(sorted((i, c) for i, c in row.items() if c))
                if cleaned:
                    equations.add(cleaned)
    rows = []
    for equation in sorted(equations):
        dense = [0] * len(unknowns)
        for i, c in equation:
            dense[i] = c
        rows.append(dense)
    debug_print(f"rigidity dim={dim} {n}->{m}: {len(unknowns)} unknowns, {len(rows)} equations")
    return unknowns, smith_kernel(ExactMatrix.from_rows(ring, rows, len(unknowns)))


def permutation_maps(unknowns: Sequence[Tuple[Word, Word]], n: int, ring: RingSpec = Z) -> Submodule:
    """Span of the position permutations w -> w o s in the given unknown coordinates."""
    index = {pair: i for i, pair in enumerate(unknowns)}
    sources = sorted({source for _, source in unknowns})
    vectors = []
    for sigma in permutations(range(n)):
        vector = [0] * len(unknowns)
        for source in sources:
            vector[index[(tuple(source[s] for s in sigma), source)]] = 1
        vectors.append(vector)
    return Submodule.span(ring, len(unknowns), vectors)


def check_rigidity(n: int) -> bool:
    """Natural endomorphisms of V^{(x)n} (dim V = n) are exactly the permutation span;
    maps to tensor lengths n - 1 and n + 1 vanish."""
    unknowns, space = natural_map_space(n, n, n)
    perms = permutation_maps(unknowns, n)
    if not submodule_equal(space, perms) or len(space) != len(list(permutations(range(n)))):
        return False
    for other in (n - 1, n + 1):
        if other >= 0 and len(natural_map_space(n, n, other)[1]) != 0:
            return False
    return True
