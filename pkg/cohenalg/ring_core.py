"""
Coefficient rings: the integers and the residue rings Z/m.

A Scalar always holds its canonical representative (0 <= value < m for Z/m),
so equality and hashing are plain tuple comparisons.
"""

from dataclasses import dataclass
from math import gcd
from typing import Optional, Tuple, Union

from sympy import factorint, isprime

from .errors import GrammarError, NotAUnitError, RingMismatchError, UnsupportedRingError


@dataclass(frozen=True)
class RingSpec:
    """Either Z (modulus None) or Z/m with m >= 2."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise UnsupportedRingError(f"Z/{self.modulus} is not supported (need m >= 2)")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(None)

    @classmethod
    def modular(cls, m: int) -> "RingSpec":
        return cls(m)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse the CLI notation 'z' or 'zmod:<m>'."""
        token = text.strip().lower()
        if token in ("z", "zz", "int"):
            return cls.integers()
        if token.startswith("zmod:"):
            digits = token[len("zmod:"):]
            if not digits.isdigit():
                raise GrammarError("Ring modulus must be a positive integer", text, len("zmod:"))
            return cls.modular(int(digits))
        raise GrammarError("Unknown ring; use 'z' or 'zmod:<m>'", text, 0)

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None and isprime(self.modulus)

    def prime_power(self) -> Optional[Tuple[int, int]]:
        """(p, r) when the ring is Z/p^r, else None."""
        if self.modulus is None:
            return None
        factors = factorint(self.modulus)
        if len(factors) != 1:
            return None
        ((p, r),) = factors.items()
        return int(p), int(r)

    def reduce(self, value: int) -> int:
        return value if self.modulus is None else value % self.modulus

    def __call__(self, value: int) -> "Scalar":
        return Scalar(self, self.reduce(int(value)))

    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    def one(self) -> "Scalar":
        return Scalar(self, 1)

    def is_unit_value(self, value: int) -> bool:
        if self.modulus is None:
            return value in (1, -1)
        return gcd(value, self.modulus) == 1

    def inverse_value(self, value: int) -> int:
        if not self.is_unit_value(value):
            raise NotAUnitError(f"{value} is not a unit in {self}")
        if self.modulus is None:
            return value
        return pow(value, -1, self.modulus)

    def check_same(self, other: "RingSpec") -> None:
        if self != other:
            raise RingMismatchError(f"Ring mismatch: {self} vs {other}")

    def __str__(self) -> str:
        return "z" if self.modulus is None else f"zmod:{self.modulus}"

    def pretty(self) -> str:
        return "ℤ" if self.modulus is None else f"ℤ/{self.modulus}"


Z = RingSpec.integers()

ScalarLike = Union["Scalar", int]


@dataclass(frozen=True)
class Scalar:
    ring: RingSpec
    value: int

    def _coerce(self, other: ScalarLike) -> int:
        if isinstance(other, Scalar):
            self.ring.check_same(other.ring)
            return other.value
        if isinstance(other, int):
            return self.ring.reduce(other)
        raise TypeError(f"Cannot combine a scalar of {self.ring} with {type(other).__name__}")

    def __add__(self, other: ScalarLike) -> "Scalar":
        return self.ring(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        return self.ring(self.value - self._coerce(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return self.ring(self._coerce(other) - self.value)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        return self.ring(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Scalar":
        return self.ring(-self.value)

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.ring.modulus is None:
            return Scalar(self.ring, self.value**exponent)
        return Scalar(self.ring, pow(self.value, exponent, self.ring.modulus))

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.ring.is_unit_value(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.ring, self.ring.inverse_value(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_is_unit(a: Scalar) -> bool:
    return a.is_unit()
