"""
Text formats.

  element   1 + y1.y2 - 3*y2.y1        {1|2}.{3|4}         0
  word      x1^2 x2^-1 [x1,x2]^3 (x1 x2)^2 {1|2}^4 1
  input     1 (x) [1,0] (x) [0,2]

Every printer in the package emits text these parsers read back to an equal
value. The text itself is normalised on the way: exponents and coefficients
are reduced mod m (x1^-1 prints as x1^3 over Z/4) and nested products are
flattened.
"""

import re
from typing import List, Optional, Sequence, Tuple

from .cohen_algebra import AlgebraElement, Monomial
from .cohen_group import (
    IDENTITY,
    Commutator,
    GroupElement,
    GroupWord,
    Letter,
    Node,
    Power,
    Product,
    join_product,
    make_power,
)
from .errors import GrammarError, ShapeMismatchError
from .nat_transform import CTensorInput, FreeModule
from .ring_core import RingSpec

TOKEN_PATTERN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<tensor>\(x\))|(?P<name>[A-Za-z])|(?P<sym>\S))")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        position = 0
        while position < len(text):
            match = TOKEN_PATTERN.match(text, position)
            if match is None or match.end() == position:
                break
            kind = match.lastgroup or "sym"
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        self.index = 0

    def peek(self) -> Tuple[str, str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.text))

    def next(self) -> Tuple[str, str, int]:
        token = self.peek()
        self.index += 1
        return token

    def at(self, value: str) -> bool:
        return self.peek()[1] == value and self.peek()[0] != "end"

    def expect(self, value: str) -> None:
        kind, text, position = self.next()
        if text != value or kind == "end":
            self.fail(f"Expected {value!r}", position)

    def integer(self, signed: bool = False) -> int:
        sign = 1
        if signed and self.at("-"):
            self.next()
            sign = -1
        kind, text, position = self.next()
        if kind != "int":
            self.fail("Expected an integer", position)
        return sign * int(text)

    def finish(self) -> None:
        kind, text, position = self.peek()
        if kind != "end":
            self.fail(f"Unexpected {text!r}", position)

    def fail(self, message: str, position: int):
        raise GrammarError(message, self.text, position)


# =============================================================================
# Algebra elements
# =============================================================================

def _parse_block(scanner: _Scanner, prefix: str) -> Tuple[int, ...]:
    """`{i1|...|ik}`; each index may carry the generator letter, as in `{x1|x2}`."""
    scanner.expect("{")
    block: List[int] = []
    while True:
        if scanner.at(prefix):
            scanner.next()
        block.append(scanner.integer())
        if not scanner.at("|"):
            break
        scanner.next()
    scanner.expect("}")
    return tuple(block)


def _parse_atom(scanner: _Scanner) -> Tuple[int, ...]:
    kind, text, position = scanner.peek()
    if text == "y":
        scanner.next()
        return (scanner.integer(),)
    if text == "{":
        return _parse_block(scanner, "y")
    scanner.fail("Expected a generator 'y<i>' or a block '{i|j|...}'", position)
    return ()


def _parse_monomial(scanner: _Scanner) -> List[Tuple[int, ...]]:
    blocks = [_parse_atom(scanner)]
    while scanner.at("."):
        scanner.next()
        blocks.append(_parse_atom(scanner))
    return blocks


def parse_element(text: str, ring: RingSpec, n: Optional[int] = None, k: Optional[int] = None) -> AlgebraElement:
    """Parse `<term> (('+'|'-') <term>)*`; n defaults to the largest index, k to the block size seen."""
    scanner = _Scanner(text)
    terms: List[Tuple[int, List[Tuple[int, ...]]]] = []
    sign = 1
    if scanner.at("-"):
        scanner.next()
        sign = -1
    while True:
        kind, value, position = scanner.peek()
        coef = 1
        blocks: List[Tuple[int, ...]] = []
        if kind == "int":
            coef = scanner.integer()
            if scanner.at("*"):
                scanner.next()
                blocks = _parse_monomial(scanner)
        else:
            blocks = _parse_monomial(scanner)
        terms.append((sign * coef, blocks))
        if scanner.at("+") or scanner.at("-"):
            sign = 1 if scanner.next()[1] == "+" else -1
            continue
        break
    scanner.finish()

    sizes = {len(b) for _, blocks in terms for b in blocks}
    if len(sizes) > 1:
        raise GrammarError(f"Mixed block sizes {sorted(sizes)}", text, 0)
    size = k if k is not None else (next(iter(sizes)) if sizes else 1)
    for _, blocks in terms:
        for block in blocks:
            if len(block) != size:
                raise ShapeMismatchError(f"Block {block} in an element of block size {size}")
    indices = [i for _, blocks in terms for b in blocks for i in b]
    count = n if n is not None else max(indices, default=0)
    result = AlgebraElement.zero(ring, count, size)
    for coef, blocks in terms:
        mono = Monomial.from_blocks(blocks, size) if blocks else Monomial((), size)
        result = result + AlgebraElement(ring, count, {mono: coef}, size)
    return result


# =============================================================================
# Group words
# =============================================================================

def _parse_word_atom(scanner: _Scanner, ring: RingSpec) -> Node:
    kind, text, position = scanner.peek()
    if text == "x":
        scanner.next()
        return Letter((scanner.integer(),), ring(1))
    if text == "{":
        return Letter(_parse_block(scanner, "x"), ring(1))
    if text == "[":
        scanner.next()
        entries = [_parse_product(scanner, ring)]
        while scanner.at(","):
            scanner.next()
            entries.append(_parse_product(scanner, ring))
        scanner.expect("]")
        if len(entries) < 2:
            scanner.fail("A commutator needs at least two entries", position)
        return Commutator(tuple(entries))
    if text == "(" and kind == "sym":
        scanner.next()
        inner = _parse_product(scanner, ring)
        scanner.expect(")")
        return inner
    if kind == "int" and text == "1":
        scanner.next()
        return IDENTITY
    scanner.fail("Expected 'x<i>', '{i|...}', '[...]', '(...)' or '1'", position)
    return IDENTITY


def _parse_factor(scanner: _Scanner, ring: RingSpec) -> Node:
    node = _parse_word_atom(scanner, ring)
    while scanner.at("^"):
        scanner.next()
        exponent = scanner.integer(signed=True)
        if node is IDENTITY:
            continue
        node = make_power(node, exponent)
    return node


def _starts_factor(scanner: _Scanner) -> bool:
    kind, text, _ = scanner.peek()
    return text in ("x", "{", "[") or (kind == "sym" and text == "(") or (kind == "int" and text == "1")


def _parse_product(scanner: _Scanner, ring: RingSpec) -> Node:
    factors = [_parse_factor(scanner, ring)]
    while _starts_factor(scanner):
        factors.append(_parse_factor(scanner, ring))
    if len(factors) == 1:
        return factors[0]
    return join_product(factors) if any(f is not IDENTITY for f in factors) else IDENTITY


def _max_index(node: Node) -> Tuple[int, int]:
    """(largest index, block size) seen in a word tree; block size 0 when no letter occurs."""
    if isinstance(node, Letter):
        return max(node.generator), len(node.generator)
    children: Sequence[Node] = ()
    if isinstance(node, Commutator):
        children = node.entries
    elif isinstance(node, Product):
        children = node.factors
    elif isinstance(node, Power):
        children = (node.base,)
    best, size = 0, 0
    for child in children:
        index, child_size = _max_index(child)
        best = max(best, index)
        size = size or child_size
    return best, size


def parse_word(text: str, ring: RingSpec, n: Optional[int] = None, k: Optional[int] = None) -> GroupWord:
    scanner = _Scanner(text)
    node = _parse_product(scanner, ring)
    scanner.finish()
    largest, seen = _max_index(node)
    return GroupWord(ring, n if n is not None else largest, k if k is not None else (seen or 1), node)


def parse_group_element(text: str, ring: RingSpec, n: Optional[int] = None, k: Optional[int] = None) -> GroupElement:
    return GroupElement.from_word(parse_word(text, ring, n, k))


# =============================================================================
# Tensor inputs
# =============================================================================

def parse_vector(text: str, dim: Optional[int] = None) -> Tuple[int, ...]:
    scanner = _Scanner(text)
    vector = _parse_vector(scanner)
    scanner.finish()
    if dim is not None and len(vector) != dim:
        raise GrammarError(f"Expected {dim} coefficients, got {len(vector)}", text, 0)
    return vector


def _parse_vector(scanner: _Scanner) -> Tuple[int, ...]:
    scanner.expect("[")
    values = [scanner.integer(signed=True)]
    while scanner.at(","):
        scanner.next()
        values.append(scanner.integer(signed=True))
    scanner.expect("]")
    return tuple(values)


def parse_tensor_input(text: str, module: FreeModule) -> CTensorInput:
    """Parse `slot ('(x)' slot)*` with slot = `1` or `[c1,...,cm]`."""
    scanner = _Scanner(text)
    slots: List[Optional[Tuple[int, ...]]] = []
    while True:
        kind, value, position = scanner.peek()
        if kind == "int" and value == "1":
            scanner.next()
            slots.append(None)
        elif value == "[":
            vector = _parse_vector(scanner)
            if len(vector) != module.dim:
                scanner.fail(f"Expected {module.dim} coefficients", position)
            slots.append(tuple(module.ring.reduce(c) for c in vector))
        else:
            scanner.fail("Expected '1' or '[c1,...,cm]'", position)
        if scanner.peek()[0] == "tensor":
            scanner.next()
            continue
        break
    scanner.finish()
    return CTensorInput(module, tuple(slots))
