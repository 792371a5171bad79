"""
Exact linear algebra over Z and Z/p.

Over a prime field everything goes through sympy's DomainMatrix on GF(p).
Over Z we need lattice answers (kernels as lattices, canonical bases of
submodules): kernels come from the Smith decomposition S = U A T and
canonical bases from the Hermite normal form, both from sympy.
Z/p^r with r >= 2 and other composite moduli are rejected.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp
from sympy.polys.matrices.normalforms import invariant_factors as _sympy_invariant_factors

from .errors import ShapeMismatchError, UnsupportedRingError
from .ring_core import Z, RingSpec
from .settings import debug_print

Vector = Tuple[int, ...]


def _domain(ring: RingSpec):
    if ring.is_integers:
        return ZZ
    if ring.is_prime_field:
        return GF(ring.modulus)
    raise UnsupportedRingError(
        f"Linear algebra over {ring.pretty()} is not supported; use Z or a prime modulus"
    )


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with canonical integer entries in a fixed ring."""

    ring: RingSpec
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    @classmethod
    def from_rows(
        cls, ring: RingSpec, rows: Sequence[Sequence[int]], cols: Optional[int] = None
    ) -> "ExactMatrix":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        normalized = []
        for row in rows:
            if len(row) != width:
                raise ShapeMismatchError(f"Row of length {len(row)} in a matrix of width {width}")
            normalized.append(tuple(ring.reduce(int(x)) for x in row))
        return cls(ring, len(normalized), width, tuple(normalized))

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> "ExactMatrix":
        return cls(ring, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: RingSpec, size: int) -> "ExactMatrix":
        return cls.from_rows(
            ring, [[1 if i == j else 0 for j in range(size)] for i in range(size)], size
        )

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.ring, self.cols, self.rows, tuple(self.column(j) for j in range(self.cols))
        )

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        self.ring.check_same(other.ring)
        if self.cols != other.rows:
            raise ShapeMismatchError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [other.column(j) for j in range(other.cols)]
        return ExactMatrix.from_rows(
            self.ring,
            [[sum(a * b for a, b in zip(row, col)) for col in columns] for row in self.entries],
            other.cols,
        )

    def apply(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.cols:
            raise ShapeMismatchError(f"Vector of length {len(vector)} for {self.cols} columns")
        return tuple(
            self.ring.reduce(sum(a * b for a, b in zip(row, vector))) for row in self.entries
        )

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def to_domain_matrix(self) -> DomainMatrix:
        domain = _domain(self.ring)
        return DomainMatrix(
            [[domain(x) for x in row] for row in self.entries], (self.rows, self.cols), domain
        )

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:>3}" for x in row) for row in self.entries)


@dataclass(frozen=True)
class Submodule:
    """The R-span of `generators` inside R^ambient_dim."""

    ring: RingSpec
    ambient_dim: int
    generators: Tuple[Vector, ...]

    @classmethod
    def span(cls, ring: RingSpec, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "Submodule":
        gens = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeMismatchError(f"Vector of length {len(v)} in R^{ambient_dim}")
            gens.append(tuple(ring.reduce(int(x)) for x in v))
        return cls(ring, ambient_dim, tuple(gens))

    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.ring, len(self.generators), self.ambient_dim, self.generators)

    def canonical_basis(self) -> Tuple[Vector, ...]:
        return hermite_form(self.generators, self.ring, self.ambient_dim)

    def rank(self) -> int:
        return submodule_rank(self)

    def contains(self, vector: Sequence[int]) -> bool:
        return submodule_contains(self, vector)

    def __len__(self) -> int:
        return len(self.generators)


# =============================================================================
# Integer lattices (sympy normal forms)
# =============================================================================

def _integer_matrix(rows: Sequence[Sequence[int]], dim: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (len(rows), dim), ZZ)


def _int_columns(dm: DomainMatrix, columns: Sequence[int]) -> List[Vector]:
    entries = dm.to_Matrix()
    return [tuple(int(entries[i, j]) for i in range(entries.rows)) for j in columns]


def _integer_hermite_rows(rows: Iterable[Sequence[int]], dim: int) -> Tuple[Vector, ...]:
    """Hermite basis of the row lattice.

    sympy normalises column lattices, so the generators go in as columns and
    the pivot columns of the result are read back as rows.
    """
    nonzero = [tuple(r) for r in rows if any(r)]
    if not nonzero or dim == 0:
        return ()
    hnf = hermite_normal_form(_integer_matrix(nonzero, dim).transpose())
    return tuple(_int_columns(hnf, range(hnf.shape[1])))


def _integer_kernel(rows: Sequence[Sequence[int]], dim: int) -> Tuple[Vector, ...]:
    """Lattice basis of {v in Z^dim : row . v = 0 for every row}.

    With S = U A T in Smith form, Av = 0 iff S (T^-1 v) = 0, so the columns of
    T facing a zero (or missing) diagonal entry of S span the kernel.
    """
    if not any(any(r) for r in rows):
        return tuple(ExactMatrix.identity(Z, dim).entries)
    smf, _, transform = smith_normal_decomp(_integer_matrix(rows, dim))
    diagonal = smf.to_Matrix()
    free = [j for j in range(dim) if j >= len(rows) or diagonal[j, j] == 0]
    return _integer_hermite_rows(_int_columns(transform, free), dim)


# =============================================================================
# Prime field elimination (sympy)
# =============================================================================

def _int_rows(dm: DomainMatrix, ring: RingSpec) -> List[Vector]:
    return [tuple(ring.reduce(int(x)) for x in row) for row in dm.to_Matrix().tolist()]


def _field_rref_rows(rows: Sequence[Vector], ring: RingSpec, dim: int) -> Tuple[Vector, ...]:
    if not rows or dim == 0:
        return ()
    reduced, _pivots = ExactMatrix(ring, len(rows), dim, tuple(rows)).to_domain_matrix().rref()
    return tuple(r for r in _int_rows(reduced, ring) if any(r))


# =============================================================================
# Public operations
# =============================================================================

def rank(matrix: ExactMatrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    dm = matrix.to_domain_matrix()
    if matrix.ring.is_integers:
        dm = dm.convert_to(QQ)
    return int(dm.rank())


def hermite_form(rows: Sequence[Vector], ring: RingSpec, dim: int) -> Tuple[Vector, ...]:
    """Canonical basis of the row span: HNF over Z, nonzero RREF rows over Z/p."""
    if ring.is_integers:
        return _integer_hermite_rows(rows, dim)
    _domain(ring)
    return _field_rref_rows(rows, ring, dim)


def smith_kernel(matrix: ExactMatrix) -> Submodule:
    """Kernel of `matrix` acting on column vectors, as a submodule of R^cols.

    Over Z the result is a lattice basis of the full kernel (no saturation is
    lost), in Hermite normal form.
    """
    ring = matrix.ring
    if matrix.cols == 0:
        return Submodule(ring, 0, ())
    if ring.is_integers:
        basis = _integer_kernel(matrix.entries, matrix.cols)
    elif matrix.rows == 0:
        basis = ExactMatrix.identity(ring, matrix.cols).entries
    else:
        null = matrix.to_domain_matrix().nullspace()
        basis = _field_rref_rows(_int_rows(null, ring), ring, matrix.cols) if null.shape[0] else ()
    debug_print(f"kernel of {matrix.rows}x{matrix.cols} over {ring}: rank {len(basis)}")
    return Submodule(ring, matrix.cols, tuple(basis))


def submodule_rank(module: Submodule) -> int:
    return rank(module.matrix())


def submodule_equal(a: Submodule, b: Submodule) -> bool:
    a.ring.check_same(b.ring)
    if a.ambient_dim != b.ambient_dim:
        raise ShapeMismatchError(f"Ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    return a.canonical_basis() == b.canonical_basis()


def submodule_contains(module: Submodule, vector: Sequence[int]) -> bool:
    ring = module.ring
    if len(vector) != module.ambient_dim:
        raise ShapeMismatchError(f"Vector of length {len(vector)} in R^{module.ambient_dim}")
    extended = Submodule.span(ring, module.ambient_dim, module.generators + (tuple(vector),))
    return extended.canonical_basis() == module.canonical_basis()


def invariant_factors(matrix: ExactMatrix) -> Tuple[int, ...]:
    """Nonzero invariant factors of an integer matrix (its Smith normal form diagonal)."""
    if not matrix.ring.is_integers:
        raise UnsupportedRingError("Invariant factors are computed over Z only")
    if matrix.rows == 0 or matrix.cols == 0:
        return ()
    factors = _sympy_invariant_factors(matrix.to_domain_matrix())
    return tuple(abs(int(f)) for f in factors if int(f) != 0)
