"""GF(2^128) arithmetic for polynomial-evaluation hashing and weak-key analysis.

Elements are 128-bit integers where bit k is the coefficient of x^k, so the
rightmost (least significant) bit of a block is x^0 and the integer 1 is the
multiplicative identity.  The field is reduced by the fixed polynomial

    f(x) = x^128 + x^7 + x^2 + x + 1

which in this ordering is the constant 0x87 plus the implicit x^128 term.
"""

from __future__ import annotations

import math

# f(x) = x^128 + x^7 + x^2 + x + 1, with the x^128 bit kept explicit so the
# shift-and-reduce loop can clear it in one XOR.
REDUCTION_POLY = (1 << 128) | 0x87

_MASK128 = (1 << 128) - 1

#: Prime factorization of the multiplicative group order 2^128 - 1.
GROUP_ORDER_FACTORS = (
    3,
    5,
    17,
    257,
    641,
    65537,
    274177,
    6700417,
    67280421310721,
)

GROUP_ORDER = (1 << 128) - 1

if math.prod(GROUP_ORDER_FACTORS) != GROUP_ORDER:
    raise AssertionError("group order factor list is inconsistent")


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting the zero element."""


class ZeroElement(ValueError):
    """Raised when an operation requires a nonzero element."""


class NotADivisor(ValueError):
    """Raised when a requested subgroup order does not divide 2^128 - 1."""


class FieldElement:
    """An element of GF(2^128), stored as a 128-bit integer."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        if not 0 <= value <= _MASK128:
            raise ValueError("field element out of the 128-bit range")
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, _value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def from_bytes(cls, data: bytes) -> "FieldElement":
        if len(data) != 16:
            raise ValueError("field element requires exactly 16 bytes")
        return cls(int.from_bytes(data, "big"))

    @classmethod
    def from_hex(cls, text: str) -> "FieldElement":
        return cls.from_bytes(bytes.fromhex(text))

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(16, "big")

    def to_hex(self) -> str:
        """32 lowercase hex characters, most significant bit first."""
        return self.to_bytes().hex()

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldElement) and self.value == other.value

    def __hash__(self) -> int:
        return hash((FieldElement, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement(0x{self.value:032x})"

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)


ZERO = FieldElement(0)
ONE = FieldElement(1)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    """Addition in GF(2^128): bitwise XOR."""
    return FieldElement(a.value ^ b.value)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Multiplication modulo x^128 + x^7 + x^2 + x + 1.

    Shift-and-add over the bits of b; the running multiple of a is reduced
    whenever it reaches degree 128, so intermediates stay at 129 bits.
    """
    x = a.value
    y = b.value
    acc = 0
    while y:
        if y & 1:
            acc ^= x
        y >>= 1
        x <<= 1
        if x >> 128:
            x ^= REDUCTION_POLY
    return FieldElement(acc)


def square(a: FieldElement) -> FieldElement:
    return mul(a, a)


def pow(a: FieldElement, e: int) -> FieldElement:  # noqa: A001 - mirrors math naming
    """Square-and-multiply exponentiation; pow(a, 0) == 1 by convention,
    including for a == 0."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = ONE
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse via a^(2^128 - 2)."""
    if a.value == 0:
        raise ZeroInverse("zero has no multiplicative inverse")
    return pow(a, GROUP_ORDER - 1)


def sqrt(a: FieldElement) -> FieldElement:
    """The unique square root; squaring is a bijection in characteristic 2,
    and a^(2^127) inverts it."""
    return pow(a, 1 << 127)


def _divisors_of_group_order() -> list[int]:
    divs = [1]
    for p in GROUP_ORDER_FACTORS:
        divs += [d * p for d in divs]
    return sorted(divs)


_GROUP_ORDER_DIVISORS = _divisors_of_group_order()


def element_of_order(r: int) -> FieldElement:
    """Construct an element of exact multiplicative order r.

    r must be a divisor of 2^128 - 1 greater than 1.  Candidate bases 2, 3,
    4, ... are raised to (2^128 - 1)/r in a fixed sequence until the result
    has exact order r (no maximal proper divisor of r kills it), so the
    construction is deterministic.
    """
    if r <= 1 or GROUP_ORDER % r != 0:
        raise NotADivisor(f"{r} does not divide 2^128 - 1 (or is trivial)")
    cofactor = GROUP_ORDER // r
    maximal = [r // p for p in GROUP_ORDER_FACTORS if r % p == 0]
    base = 2
    while True:
        t = pow(FieldElement(base), cofactor)
        if t != ONE and all(pow(t, d) != ONE for d in maximal):
            return t
        base += 1


def order_divisor(h: FieldElement, max_order: int) -> int | None:
    """Smallest divisor r <= max_order of 2^128 - 1 with h^r = 1, if any.

    This is the weak-key membership test: a hash key in a subgroup of order
    r satisfies h^r = 1, and every element order divides 2^128 - 1.
    """
    if h.value == 0:
        raise ZeroElement("zero is not in the multiplicative group")
    for r in _GROUP_ORDER_DIVISORS:
        if r > max_order:
            break
        if pow(h, r) == ONE:
            return r
    return None
