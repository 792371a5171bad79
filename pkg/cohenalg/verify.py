#!/usr/bin/env python3
"""
Verification suites.

Each suite recomputes a family of identities from scratch and records one
CheckResult per instance. Randomized suites draw from random.Random(seed),
so a report is reproducible from its suite name and seed.
"""

import random
from itertools import permutations
from math import factorial, prod
from typing import Callable, Dict, List, Optional

from .cohen_algebra import (
    AlgebraElement,
    basis,
    elem_pow,
    equalizer_submodule,
    full_basis,
    is_member_L,
    iterated_bracket,
    projection_kernel_submodule,
    projection_pi,
    projection_pi_block,
    shuffle_expand,
)
from .cohen_group import (
    Commutator,
    GroupElement,
    GroupWord,
    Letter,
    Power,
    Product,
    block_proj,
    descend,
    group_commutator,
    group_equal,
    inject_s,
    is_member_H,
    lift_H,
    proj_p,
    random_word,
    rep,
)
from .errors import PreconditionError
from .exact_linalg import submodule_rank
from .lcs_lie import lcs_rank, pairing_matrix
from .nat_transform import (
    FreeModule,
    check_lie_equals_gamma_cap_primitives,
    check_rigidity,
    convolution,
    is_coalgebra_map,
    lie_submodule,
    primitive_cokernel_invariants,
    theta_matrix,
    verify_theta_injectivity,
)
from .result_schema import SuiteReport
from .ring_core import Z, RingSpec
from .settings import DEFAULT_TRIALS, EXPONENT_RANGE, debug_print

BASIS_COUNTS_N5 = (1, 5, 20, 60, 120, 120)
LIE_RANKS = {2: 1, 3: 2, 4: 6, 5: 24}
THETA_INJECTIVITY_CASES = ((1, 1), (2, 2), (3, 3), (2, 3))
TORSION_CASES = ((2, 1), (2, 2), (3, 1))


def _exponent(rng: random.Random, nonzero: bool = False) -> int:
    low, high = EXPONENT_RANGE
    while True:
        value = rng.randint(low, high)
        if value or not nonzero:
            return value


def _random_element(rng: random.Random, ring: RingSpec, n: int, max_degree: int) -> AlgebraElement:
    """A sparse element of A^R(y_1..y_n) of degree <= max_degree with small coefficients."""
    monomials = [m for m in full_basis(n) if m.degree <= max_degree]
    chosen = rng.sample(monomials, min(len(monomials), rng.randint(1, 4)))
    return AlgebraElement(ring, n, {m: rng.randint(-3, 3) for m in chosen})


def _letter(ring: RingSpec, n: int, block, exponent: int) -> GroupElement:
    return GroupElement.from_word(GroupWord.letter(ring, n, block, exponent))


def _report(suite: str, seed: int) -> SuiteReport:
    return SuiteReport(suite=suite, seed=seed)


# =============================================================================
# Algebra suites
# =============================================================================

def suite_basis(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    report = _report("basis", seed)
    for t, expected in enumerate(BASIS_COUNTS_N5):
        count = len(basis(5, 1, t))
        report.add(f"dim A(y1..y5)_{t}", count == expected, f"got {count}, expected {expected}")
    for n, k, t, expected in ((3, 1, 2, 6), (2, 1, 3, 0), (4, 2, 2, 24), (4, 2, 1, 12)):
        count = len(basis(n, k, t))
        report.add(f"basis n={n} k={k} t={t}", count == expected, f"got {count}, expected {expected}")
    return report


def suite_shuffle(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    """The signed shuffle expansion against the recursive bracket."""
    report = _report("shuffle", seed)
    for n in range(1, 6):
        mismatches = []
        for t in range(1, n + 1):
            for indices in permutations(range(1, n + 1), t):
                generators = [AlgebraElement.generator(Z, n, i) for i in indices]
                if shuffle_expand(list(indices), Z, n) != iterated_bracket(generators):
                    mismatches.append(indices)
        report.add(f"admissible lists on n={n}", not mismatches, f"mismatches: {mismatches[:3]}" if mismatches else None)
    rng = random.Random(seed)
    for trial in range(trials):
        n = rng.randint(2, 4)
        items = [_random_element(rng, Z, n, 1) for _ in range(rng.randint(2, 4))]
        equal = shuffle_expand(items) == iterated_bracket(items)
        report.add(f"random degree-one entries #{trial}", equal, None if equal else ", ".join(map(str, items)))
    return report


def suite_torsion(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    """(1 + y_I)^(p^r) = 1 in A^{Z/p^r}."""
    report = _report("torsion", seed)
    n = 4
    for p, r in TORSION_CASES:
        ring = RingSpec.modular(p ** r)
        for k in (1, 2):
            failures = []
            for block in permutations(range(1, n + 1), k):
                unit = AlgebraElement.generator(ring, n, block) + 1
                if not elem_pow(unit, p ** r) == AlgebraElement.one(ring, n, k):
                    failures.append(block)
                if not (_letter(ring, n, block, 1) ** (p ** r)).is_identity():
                    failures.append(block)
            report.add(f"p={p} r={r} k={k}", not failures, f"fails for {failures[:3]}" if failures else None)
    return report


def suite_equalizer(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    """Ranks of L_n and of the common kernel of the projections."""
    report = _report("equalizer", seed)
    for ring in (Z, RingSpec.modular(2)):
        for n in range(0, 4):
            expected = sum(factorial(t) for t in range(n + 1))
            got = submodule_rank(equalizer_submodule(n, ring))
            report.add(f"rank L_{n} over {ring}", got == expected, f"got {got}, expected {expected}")
            got = submodule_rank(projection_kernel_submodule(n, ring))
            report.add(f"rank Gamma_{n} over {ring}", got == factorial(n), f"got {got}, expected {factorial(n)}")
    return report


# =============================================================================
# Group suites
# =============================================================================

def suite_lemma2_10(seed: int, trials: int = 100) -> SuiteReport:
    """rep([[x_i1^r1, ..., x_it^rt]]) = 1 + r1...rt [[y_i1, ..., y_it]]."""
    report = _report("lemma2_10", seed)
    rng = random.Random(seed)
    n = 5
    for ring in (Z, RingSpec.modular(9)):
        for unit_exponents in (True, False):
            failures = []
            for _ in range(trials):
                t = rng.randint(2, 4)
                indices = [rng.randint(1, n) for _ in range(t)]
                exponents = [1] * t if unit_exponents else [_exponent(rng) for _ in range(t)]
                commutator = group_commutator([_letter(ring, n, i, e) for i, e in zip(indices, exponents)])
                expected = shuffle_expand(indices, ring, n) * prod(exponents) + 1
                if commutator.canon != expected:
                    failures.append((tuple(indices), tuple(exponents)))
            label = "unit exponents" if unit_exponents else "arbitrary exponents"
            report.add(f"{label} over {ring}", not failures, f"fails for {failures[:3]}" if failures else None)
    return report


def _rebracketed(rng: random.Random, t: int):
    """Two exponent vectors with the same product."""
    base = [_exponent(rng, nonzero=True) for _ in range(t)]
    moved = [rng.randint(1, 3) for _ in range(t)]
    order = list(range(t))
    rng.shuffle(order)
    return [b * m for b, m in zip(base, moved)], [b * moved[o] for b, o in zip(base, order)]


def suite_relations(seed: int, trials: int = 100) -> SuiteReport:
    """The defining relations of K_n^R(k) hold in the representation."""
    report = _report("relations", seed)
    rng = random.Random(seed)
    for k in (1, 2):
        vanishing, rebracketing, free_product = [], [], []
        for _ in range(trials):
            n = rng.randint(max(2, 2 * k), 5)
            ring = rng.choice([Z, RingSpec.modular(9)])
            t = rng.randint(2, min(4, n // k))

            # a commutator whose blocks share an index
            blocks = [tuple(rng.randint(1, n) for _ in range(k)) for _ in range(t)]
            flat = [i for b in blocks for i in b]
            if len(set(flat)) == len(flat):
                source = rng.randrange(len(flat))
                target = rng.choice([p for p in range(len(flat)) if p != source])
                flat[target] = flat[source]
                blocks = [tuple(flat[s * k:(s + 1) * k]) for s in range(t)]
            letters = [_letter(ring, n, b, _exponent(rng)) for b in blocks]
            if not group_commutator(letters).is_identity():
                vanishing.append(blocks)

            # equal exponent products give equal commutators
            distinct = rng.sample(range(1, n + 1), k * t)
            blocks = [tuple(distinct[s * k:(s + 1) * k]) for s in range(t)]
            left, right = _rebracketed(rng, t)
            a = group_commutator([_letter(ring, n, b, e) for b, e in zip(blocks, left)])
            b = group_commutator([_letter(ring, n, b, e) for b, e in zip(blocks, right)])
            if not group_equal(a, b):
                rebracketing.append((blocks, left, right))

            # x^r x^s = x^(r+s) in each copy of R
            block = tuple(rng.sample(range(1, n + 1), k))
            r, s = _exponent(rng), _exponent(rng)
            if _letter(ring, n, block, r) * _letter(ring, n, block, s) != _letter(ring, n, block, r + s):
                free_product.append((block, r, s))

        for name, failures in (("vanishing", vanishing), ("rebracketing", rebracketing), ("free product", free_product)):
            report.add(f"{name} k={k}", not failures, f"fails for {failures[:2]}" if failures else None)

    # internal repeats inside a block
    ring = Z
    for block in ((1, 1), (2, 1, 2)):
        letter = _letter(ring, 3, block, _exponent(rng, nonzero=True))
        report.add(f"repeated block {block}", letter.is_identity())

    # nilpotency: (n+1)-fold commutators of generators vanish
    for n in (2, 3):
        entries = [_letter(Z, n, rng.randint(1, n), 1) for _ in range(n + 1)]
        report.add(f"class <= {n}", group_commutator(entries).is_identity())
    return report


def suite_projection(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    """rep commutes with the face projections, the sections and the window projections."""
    report = _report("projection", seed)
    rng = random.Random(seed)
    faces, sections, windows = [], [], []
    for _ in range(trials):
        n = rng.randint(2, 5)
        g = GroupElement.from_word(random_word(rng, Z, n, length=rng.randint(1, 4)))
        j = rng.randint(1, n)
        if proj_p(j, g).canon != projection_pi(j, g.canon):
            faces.append((str(g.word), j))
        if inject_s(j, g).canon != g.canon.map_indices(lambda i: i if i < j else i + 1, n + 1):
            sections.append((str(g.word), j))
        l, blocks = 2, rng.randint(1, 2)
        h = GroupElement.from_word(random_word(rng, Z, l * blocks, length=3))
        b = rng.randrange(blocks)
        for shift in ("verbatim", "window"):
            if block_proj(b, l, h, shift).canon != projection_pi_block(b, l, h.canon, shift):
                windows.append((str(h.word), b, shift))
    report.add("rep o p_j = pi_j o rep", not faces, f"fails for {faces[:2]}" if faces else None)
    report.add("rep o s_j = s_j o rep", not sections, f"fails for {sections[:2]}" if sections else None)
    report.add("rep o p_window = pi_window o rep", not windows, f"fails for {windows[:2]}" if windows else None)

    commutator = GroupElement.from_word(
        GroupWord(Z, 2, 1, Commutator((Letter((1,), Z(1)), Letter((2,), Z(1)))))
    )
    report.add("[x1,x2] in H_2", is_member_H(commutator))
    report.add("x1 not in H_2", not is_member_H(_letter(Z, 2, 1, 1)))
    return report


def _random_kernel_element(rng: random.Random) -> GroupElement:
    """A product of commutators [x1^a, x2^b]^(+-1) in K_2: killed by both faces."""
    factors = []
    for _ in range(rng.randint(1, 3)):
        pair = Commutator(
            (Letter((1,), Z(_exponent(rng, nonzero=True))), Letter((2,), Z(_exponent(rng, nonzero=True))))
        )
        factors.append(pair if rng.random() < 0.5 else Power(pair, -1))
    expr = factors[0] if len(factors) == 1 else Product(tuple(factors))
    return GroupElement.from_word(GroupWord(Z, 2, 1, expr))


def suite_lift(seed: int, trials: int = 5) -> SuiteReport:
    """lift_H lands in H_n and descends back to alpha."""
    report = _report("lift", seed)
    rng = random.Random(seed)
    alphas = [
        GroupElement.from_word(GroupWord(Z, 2, 1, Commutator((Letter((1,), Z(1)), Letter((2,), Z(1))))))
    ]
    alphas += [_random_kernel_element(rng) for _ in range(trials)]
    for n in (3, 4):
        for alpha in alphas:
            lifted = lift_H(alpha, 2, n)
            member = is_member_H(lifted)
            back = member and group_equal(descend(lifted, 2), alpha)
            algebra_member = is_member_L(lifted.canon)
            report.add(
                f"lift {alpha.word} to n={n}",
                member and back and algebra_member,
                None if member and back and algebra_member
                else f"member={member} descends={back} in L_{n}={algebra_member}",
            )
    return report


# =============================================================================
# Lie and bracket suites
# =============================================================================

def suite_lie(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    report = _report("lie", seed)
    for n, expected in LIE_RANKS.items():
        got = submodule_rank(lie_submodule(n))
        report.add(f"rank Lie({n})", got == expected, f"got {got}, expected {expected}")
        got = lcs_rank(n, 1, n)
        report.add(f"bracket basis rank in degree {n}", got == expected, f"got {got}, expected {expected}")
    for ring in (Z, RingSpec.modular(2), RingSpec.modular(3)):
        for n in range(1, 5):
            report.add(f"gamma_{n} cap P = Lie({n}) over {ring}", check_lie_equals_gamma_cap_primitives(n, ring))
    for n in range(2, 5):
        factors = primitive_cokernel_invariants(n)
        report.add(f"torsion-free cokernel n={n}", all(f == 1 for f in factors), f"invariant factors {factors}")
    return report


def suite_pairing(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    report = _report("pairing", seed)
    for k in (1, 2):
        for t in (1, 2, 3):
            for n in range(k * t, 7):
                report.add(f"pairing n={n} k={k} t={t}", pairing_matrix(n, k, t).is_identity())
    return report


# =============================================================================
# Natural transformation suites
# =============================================================================

def suite_theta_injectivity(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    report = _report("theta-inj", seed)
    for n, m in THETA_INJECTIVITY_CASES:
        report.add(f"theta_{n} injective at rank {m}", verify_theta_injectivity(n, m))
    return report


def suite_multiplicativity(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    """theta(a) * theta(b) = theta(ab), and the same through rep."""
    report = _report("multiplicativity", seed)
    rng = random.Random(seed)
    module = FreeModule(Z, 2)
    elements, words = [], []
    for trial in range(trials):
        n = 2 if trial % 2 == 0 else 3
        a, b = _random_element(rng, Z, n, 2), _random_element(rng, Z, n, 2)
        product = convolution(theta_matrix(a, module, n), theta_matrix(b, module, n))
        if product.matrix != theta_matrix(a * b, module, n).matrix:
            elements.append((str(a), str(b)))
        w1, w2 = random_word(rng, Z, n, length=2), random_word(rng, Z, n, length=2)
        joined = GroupWord(Z, n, 1, Product((w1.expr, w2.expr)))
        product = convolution(theta_matrix(rep(w1), module, n), theta_matrix(rep(w2), module, n))
        if product.matrix != theta_matrix(rep(joined), module, n).matrix:
            words.append((str(w1), str(w2)))
    report.add("theta(ab) = theta(a) * theta(b)", not elements, f"fails for {elements[:2]}" if elements else None)
    report.add("theta(rep(w1 w2)) = theta(rep w1) * theta(rep w2)", not words, f"fails for {words[:2]}" if words else None)
    return report


def suite_coalg(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    """Group images are coalgebra maps; a bare generator is not."""
    report = _report("coalg", seed)
    rng = random.Random(seed)
    for ring, n, count in ((Z, 3, trials), (RingSpec.modular(2), 4, max(1, trials // 2))):
        module = FreeModule(ring, 2)
        failures = []
        for _ in range(count):
            word = random_word(rng, ring, n, length=rng.randint(1, 4))
            if not is_coalgebra_map(rep(word), module, n):
                failures.append(str(word))
        report.add(f"{count} words in K_{n} over {ring}", not failures, f"fails for {failures[:2]}" if failures else None)
    y1 = AlgebraElement.generator(Z, 2, 1)
    report.add("y1 alone is not a coalgebra map", not is_coalgebra_map(y1, FreeModule(Z, 2)))
    return report


def suite_rigidity(seed: int, trials: int = DEFAULT_TRIALS) -> SuiteReport:
    report = _report("rigidity", seed)
    for n in (1, 2, 3):
        report.add(f"natural maps on V^(x){n} are permutations", check_rigidity(n))
    return report


# =============================================================================
# Registry
# =============================================================================

SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "basis": suite_basis,
    "shuffle": suite_shuffle,
    "lemma2_10": suite_lemma2_10,
    "relations": suite_relations,
    "torsion": suite_torsion,
    "lie": suite_lie,
    "pairing": suite_pairing,
    "theta-inj": suite_theta_injectivity,
    "multiplicativity": suite_multiplicativity,
    "coalg": suite_coalg,
    "lift": suite_lift,
    "rigidity": suite_rigidity,
    "projection": suite_projection,
    "equalizer": suite_equalizer,
}

SUITE_NAMES = list(SUITES) + ["all"]


def run_suite(name: str, seed: int = 0, trials: Optional[int] = None) -> List[SuiteReport]:
    """Run one suite (or every suite for 'all'); the list holds one report per suite run."""
    if name not in SUITE_NAMES:
        raise PreconditionError(f"Unknown suite: {name}. Available: {SUITE_NAMES}")
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for suite in names:
        debug_print(f"running suite {suite} with seed {seed}")
        function = SUITES[suite]
        reports.append(function(seed) if trials is None else function(seed, trials))
    return reports
