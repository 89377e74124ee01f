"""Counter-mode keystream layers shared by the enciphering modes.

Two counter families: a 32-bit modular increment on the low lanes of the
counter block, and an XOR of the block index into the full counter block.
Both are length preserving at bit granularity; a partial final block is
XORed with the leading bits of its keystream block.
"""

from __future__ import annotations

from .blockcipher import BadBlockLength, BlockCipher
from .polyhash import BitString, _mask_tail

_LOW32 = 0xFFFFFFFF


def _inc_bytes(block: bytes) -> bytes:
    low = (int.from_bytes(block[12:], "big") + 1) & _LOW32
    return block[:12] + low.to_bytes(4, "big")


def inc(x: BitString) -> BitString:
    """Increment the low 32 bits of a 128-bit block modulo 2^32."""
    if x.bitlen != 128:
        raise BadBlockLength("inc operates on full 128-bit blocks")
    return BitString(_inc_bytes(x.data), 128)


def _apply_keystream(data: BitString, counters: bytes, cipher: BlockCipher) -> BitString:
    ks = cipher.encrypt_blocks(counters)
    nbytes = (data.bitlen + 7) // 8
    ks_bits = BitString(_mask_tail(ks[:nbytes], data.bitlen), data.bitlen)
    return data ^ ks_bits


def xcb_ctr(cipher: BlockCipher, s: BitString, data: BitString) -> BitString:
    """Keystream block i (0-based) is E(inc^i(S)); an involution for fixed
    cipher and seed."""
    if s.bitlen != 128:
        raise BadBlockLength("counter seed must be 128 bits")
    nblocks = (data.bitlen + 127) // 128
    counters = bytearray()
    ctr = s.data
    for _ in range(nblocks):
        counters += ctr
        ctr = _inc_bytes(ctr)
    return _apply_keystream(data, bytes(counters), cipher)


def xor_ctr(cipher: BlockCipher, s: BitString, data: BitString) -> BitString:
    """Keystream block i (1-based) is E(S xor bin128(i))."""
    if s.bitlen != 128:
        raise BadBlockLength("counter seed must be 128 bits")
    seed = int.from_bytes(s.data, "big")
    nblocks = (data.bitlen + 127) // 128
    counters = bytearray()
    for i in range(1, nblocks + 1):
        counters += (seed ^ i).to_bytes(16, "big")
    return _apply_keystream(data, bytes(counters), cipher)
