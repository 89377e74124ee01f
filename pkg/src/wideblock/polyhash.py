"""Polynomial-evaluation hash families over GF(2^128).

Two families are implemented: the two-argument hash used by the XCB modes
(message blocks at the highest powers of the key, tweak blocks below them,
and a final 64+64-bit length block at power one) and the single-argument
HCTR hash (blocks from power m+1 down to 2, bit length at power one, and
the bare key for the empty string).  Inputs are bit strings: the last block
of either argument may be partial and is zero-padded on the right before
being used as a coefficient.
"""

from __future__ import annotations

from . import field
from .field import FieldElement

BLOCK_BITS = 128


class EmptyString(ValueError):
    """Raised when parsing an empty string into blocks."""


class BadLength(ValueError):
    """Raised on a bit length outside an operation's allowed range."""


def _mask_tail(data: bytes, bitlen: int) -> bytes:
    """Zero the unused low-order bits of the final byte."""
    if bitlen % 8 == 0 or not data:
        return data
    keep = bitlen % 8
    out = bytearray(data)
    out[-1] &= (0xFF << (8 - keep)) & 0xFF
    return bytes(out)


class BitString:
    """An immutable bit string: bytes plus an explicit bit count.

    Bits are left-aligned (the first bit is the most significant bit of the
    first byte) and unused trailing bits of the last byte must be zero.
    """

    __slots__ = ("data", "bitlen")

    def __init__(self, data: bytes, bitlen: int | None = None):
        data = bytes(data)
        if bitlen is None:
            bitlen = 8 * len(data)
        if bitlen < 0 or len(data) != (bitlen + 7) // 8:
            raise ValueError("byte count does not match bit length")
        if _mask_tail(data, bitlen) != data:
            raise ValueError("unused trailing bits must be zero")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "bitlen", bitlen)

    def __setattr__(self, name, _value):
        raise AttributeError("BitString is immutable")

    @classmethod
    def empty(cls) -> "BitString":
        return cls(b"", 0)

    @classmethod
    def zeros(cls, nbits: int) -> "BitString":
        return cls(bytes((nbits + 7) // 8), nbits)

    @classmethod
    def from_int(cls, value: int, nbits: int) -> "BitString":
        """The nbits-bit big-endian representation of value."""
        if value < 0 or (nbits < value.bit_length()):
            raise ValueError("value does not fit in the requested width")
        nbytes = (nbits + 7) // 8
        return cls((value << (8 * nbytes - nbits)).to_bytes(nbytes, "big"), nbits)

    def to_int(self) -> int:
        """The bits read as a big-endian integer (empty string is 0)."""
        return int.from_bytes(self.data, "big") >> (8 * len(self.data) - self.bitlen)

    def to_bytes(self) -> bytes:
        if self.bitlen % 8:
            raise BadLength("bit string is not byte-aligned")
        return self.data

    def __len__(self) -> int:
        return self.bitlen

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.bitlen == other.bitlen
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((BitString, self.data, self.bitlen))

    def __repr__(self) -> str:
        return f"BitString({self.data.hex()!r}[:{self.bitlen}b])"

    def __add__(self, other: "BitString") -> "BitString":
        """Concatenation."""
        if self.bitlen % 8 == 0:
            return BitString(self.data + other.data, self.bitlen + other.bitlen)
        total = self.bitlen + other.bitlen
        return BitString.from_int((self.to_int() << other.bitlen) | other.to_int(), total)

    def __xor__(self, other: "BitString") -> "BitString":
        if self.bitlen != other.bitlen:
            raise BadLength("XOR requires equal bit lengths")
        raw = bytes(a ^ b for a, b in zip(self.data, other.data))
        return BitString(_mask_tail(raw, self.bitlen), self.bitlen)

    def msb(self, r: int) -> "BitString":
        """The leading r bits."""
        if not 0 <= r <= self.bitlen:
            raise BadLength("msb length out of range")
        return BitString(_mask_tail(self.data[: (r + 7) // 8], r), r)

    def lsb(self, r: int) -> "BitString":
        """The trailing r bits."""
        if not 0 <= r <= self.bitlen:
            raise BadLength("lsb length out of range")
        return BitString.from_int(self.to_int() & ((1 << r) - 1), r)


def parse_n(x: BitString) -> list[BitString]:
    """Split into 128-bit blocks; the last block may be 1..128 bits."""
    if x.bitlen == 0:
        raise EmptyString("cannot parse an empty string into blocks")
    if x.bitlen % 8 == 0:
        return [
            BitString(x.data[i : i + 16], min(128, x.bitlen - 8 * i))
            for i in range(0, len(x.data), 16)
        ]
    v = x.to_int()
    blocks = []
    remaining = x.bitlen
    while remaining > 0:
        width = min(BLOCK_BITS, remaining)
        remaining -= width
        blocks.append(BitString.from_int((v >> remaining) & ((1 << width) - 1), width))
    return blocks


def pad(x: BitString) -> BitString:
    """Right-pad a partial block with zeros to 128 bits."""
    if not 1 <= x.bitlen <= BLOCK_BITS:
        raise BadLength(f"pad expects 1..128 bits, got {x.bitlen}")
    if x.bitlen == BLOCK_BITS:
        return x
    return x + BitString.zeros(BLOCK_BITS - x.bitlen)


def block_to_field(block: BitString) -> FieldElement:
    if block.bitlen != BLOCK_BITS:
        raise BadLength("field elements are full 128-bit blocks")
    return FieldElement(block.to_int())


def field_to_block(element: FieldElement) -> BitString:
    return BitString(element.to_bytes(), BLOCK_BITS)


def _coefficients(x: BitString) -> list[FieldElement]:
    if x.bitlen == 0:
        return []
    return [block_to_field(pad(b)) for b in parse_n(x)]


def xcb_length_block(x_bits: int, t_bits: int) -> BitString:
    """64-bit big-endian bit counts of both arguments, concatenated."""
    return BitString.from_int(x_bits, 64) + BitString.from_int(t_bits, 64)


def xcb_hash(
    h: FieldElement,
    x: BitString,
    t: BitString,
    include_length: bool = True,
) -> FieldElement:
    """Two-argument polynomial hash used by the XCB modes.

    Horner evaluation over the block sequence (x blocks, then t blocks,
    then the length block), so x_1 lands at power m+p+1 and the length
    block at power one.  Either argument may be empty, in which case its
    term group vanishes; the length block is appended regardless.

    include_length=False drops the automatic length block for callers that
    assemble an explicit one inside t (the second hash of two-argument XCB
    variants with a single hash key does this).
    """
    terms = _coefficients(x) + _coefficients(t)
    if include_length:
        terms.append(block_to_field(xcb_length_block(x.bitlen, t.bitlen)))
    acc = field.ZERO
    for term in terms:
        acc = field.mul(field.add(acc, term), h)
    return acc


def hctr_hash(h: FieldElement, p: BitString) -> FieldElement:
    """HCTR polynomial hash: the bare key for the empty string, otherwise
    blocks at powers m+1..2 with the bit length at power one."""
    if p.bitlen == 0:
        return h
    terms = _coefficients(p)
    terms.append(FieldElement(p.bitlen))
    acc = field.ZERO
    for term in terms:
        acc = field.mul(field.add(acc, term), h)
    return acc


def hctr_hash_fixed(h: FieldElement, p: BitString) -> FieldElement:
    """Repaired HCTR hash: hash p with a single 1 bit appended.

    Appending the bit makes every input non-empty and removes the collision
    between the empty string and a single 0 bit, whose images both equal the
    bare key under the original definition.
    """
    return hctr_hash(h, p + BitString.from_int(1, 1))
