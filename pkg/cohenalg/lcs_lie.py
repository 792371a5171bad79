"""
Bracket bases for the lower central series quotients of K_n(k).

Degree-t quotients are spanned by brackets [[y_I1, y_I(s2), ..., y_I(st)]]
with I1 < ... < It admissible k-sequences (lexicographic order), pairwise
disjoint, and s a permutation of 2..t. Pairing each bracket with the dual of
its leading monomial y_I1 y_I(s2) ... y_I(st) gives the identity matrix,
which is what makes the brackets independent.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import List, Tuple

from .cohen_algebra import AlgebraElement, Monomial, shuffle_expand
from .cohen_group import Commutator, GroupElement, GroupWord, Letter
from .errors import ShapeMismatchError
from .exact_linalg import ExactMatrix, rank
from .ring_core import Z, RingSpec


def admissible_sequences(n: int, k: int) -> List[Tuple[int, ...]]:
    """Length-k sequences of distinct indices in 1..n, lexicographic."""
    return list(permutations(range(1, n + 1), k))


@dataclass(frozen=True)
class AdmissibleBracket:
    blocks: Tuple[Tuple[int, ...], ...]
    sigma: Tuple[int, ...]

    @property
    def ordered_blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """I_1 followed by I_s(2), ..., I_s(t)."""
        return (self.blocks[0],) + tuple(self.blocks[i - 1] for i in self.sigma)

    @property
    def k(self) -> int:
        return len(self.blocks[0])

    def leading_monomial(self) -> Monomial:
        return Monomial.from_blocks(self.ordered_blocks, self.k)

    def expand(self, ring: RingSpec, n: int) -> AlgebraElement:
        generators = [AlgebraElement.generator(ring, n, block) for block in self.ordered_blocks]
        return shuffle_expand(generators)

    def __str__(self) -> str:
        if self.k == 1:
            inner = ",".join(f"y{block[0]}" for block in self.ordered_blocks)
        else:
            inner = ",".join("{" + "|".join(map(str, b)) + "}" for b in self.ordered_blocks)
        return f"[{inner}]" if len(self.blocks) > 1 else inner


def lcs_quotient_basis(n: int, k: int, t: int) -> List[AdmissibleBracket]:
    if t < 1 or k < 1:
        raise ShapeMismatchError(f"Bracket basis needs t >= 1 and k >= 1 (got t={t}, k={k})")
    if k * t > n:
        return []
    result = []
    for chosen in combinations(admissible_sequences(n, k), t):
        flat = [i for block in chosen for i in block]
        if len(set(flat)) != len(flat):
            continue
        for sigma in permutations(range(2, t + 1)):
            result.append(AdmissibleBracket(tuple(chosen), tuple(sigma)))
    return result


def pairing_matrix(n: int, k: int, t: int, ring: RingSpec = Z) -> ExactMatrix:
    """<bracket_r, (leading monomial of bracket_c)^*>."""
    brackets = lcs_quotient_basis(n, k, t)
    duals = [b.leading_monomial() for b in brackets]
    rows = []
    for bracket in brackets:
        expanded = bracket.expand(ring, n)
        rows.append([expanded.coefficient(m).value for m in duals])
    return ExactMatrix.from_rows(ring, rows, len(duals))


def lcs_rank(n: int, k: int, t: int, ring: RingSpec = Z) -> int:
    """Rank of the expanded brackets inside the degree-t part of A_n[k]."""
    brackets = lcs_quotient_basis(n, k, t)
    if not brackets:
        return 0
    expanded = [b.expand(ring, n) for b in brackets]
    support = sorted({m for e in expanded for m in e.terms}, key=Monomial.sort_key)
    rows = [[e.coefficient(m).value for m in support] for e in expanded]
    return rank(ExactMatrix.from_rows(ring, rows, len(support)))


def lcs_bracket_element(bracket: AdmissibleBracket, ring: RingSpec, n: int) -> GroupElement:
    """The group commutator of the block letters; its image is 1 + the expanded bracket."""
    letters = tuple(Letter(block, ring(1)) for block in bracket.ordered_blocks)
    expr = letters[0] if len(letters) == 1 else Commutator(letters)
    return GroupElement.from_word(GroupWord(ring, n, bracket.k, expr))
