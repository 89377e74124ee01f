"""Wide-block tweakable enciphering schemes.

Six length-preserving modes built from the hash-counter-hash sandwich:

* ``xcbv1``  -- two hash keys, special first block, 32-bit-increment counter
* ``xcbv2``  -- one hash key, special last block, 32-bit-increment counter
* ``mxcbv1`` / ``mxcbv2`` -- the same constructions with the XOR-index counter
* ``hctr`` (and its repaired-hash variant) -- two independent master keys

Decryption is the mechanical inversion of each encryption pipeline: the
three layers are reversed, swapping the forward/backward direction of the
block cipher at the special block.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Optional

from . import ctr
from .blockcipher import AesCipher, BadKeyLength, BlockCipher
from .field import FieldElement
from .polyhash import (
    BitString,
    field_to_block,
    hctr_hash,
    hctr_hash_fixed,
    xcb_hash,
    xcb_length_block,
)

CipherFactory = Callable[[bytes], BlockCipher]

#: Both payload and tweak are capped at 2^39 bits.
MAX_BITS = 1 << 39

BLOCK_BITS = 128
BLOCK = BitString.zeros(BLOCK_BITS)


class LengthBounds(ValueError):
    """Raised when a payload or tweak violates the mode's length bounds."""


class PartialBlockRejected(ValueError):
    """Raised when a single-hash-key variant gets a payload that is not a
    multiple of the block length (a regime with a known distinguishing
    attack) without the explicit insecure-mode flag."""


@dataclass(frozen=True)
class XcbVariant:
    """An XCB family member: construction version plus counter family."""

    version: str  # "v1" | "v2"
    counter_family: str  # "inc32" | "xor_index"

    @property
    def name(self) -> str:
        prefix = "xcb" if self.counter_family == "inc32" else "mxcb"
        return prefix + self.version

    def counter(self, cipher: BlockCipher, s: BitString, data: BitString) -> BitString:
        if self.counter_family == "inc32":
            return ctr.xcb_ctr(cipher, s, data)
        return ctr.xor_ctr(cipher, s, data)


XCBV1 = XcbVariant("v1", "inc32")
XCBV2 = XcbVariant("v2", "inc32")
MXCBV1 = XcbVariant("v1", "xor_index")
MXCBV2 = XcbVariant("v2", "xor_index")

VARIANTS = {v.name: v for v in (XCBV1, XCBV2, MXCBV1, MXCBV2)}


@dataclass(frozen=True)
class TesKeySet:
    """Master key plus the per-scheme derived subkeys.

    ``derived`` is False when any subkey was injected rather than derived
    from the master (used by attack experiments to install weak hash keys).
    """

    scheme: str  # "xcbv1" | "xcbv2" | "hctr"
    master: bytes
    derived: bool = True
    h1: Optional[FieldElement] = None
    h2: Optional[FieldElement] = None
    h: Optional[FieldElement] = None
    ke: Optional[BlockCipher] = None
    kd: Optional[BlockCipher] = None
    kc: Optional[BlockCipher] = None
    k: Optional[BlockCipher] = None


def _constant_block(last_byte: int) -> bytes:
    return bytes(15) + bytes([last_byte])


def derive_keys_v1(master: bytes, factory: CipherFactory = AesCipher) -> TesKeySet:
    """Subkeys for the two-hash-key construction (fixed 128-bit master).

    The five subkeys are the master cipher's images of the constants
    0, 1, 2, 3 and 4 in the low byte: h1 = E(..001), h2 = E(..011),
    Ke = E(0), Kd = E(..100), Kc = E(..010).
    """
    if len(master) != 16:
        raise BadKeyLength("this construction uses a fixed 128-bit master key")
    em = factory(master)
    h1 = FieldElement.from_bytes(em.encrypt_block(_constant_block(0x01)))
    h2 = FieldElement.from_bytes(em.encrypt_block(_constant_block(0x03)))
    ke = em.encrypt_block(_constant_block(0x00))
    kd = em.encrypt_block(_constant_block(0x04))
    kc = em.encrypt_block(_constant_block(0x02))
    return TesKeySet(
        scheme="xcbv1",
        master=bytes(master),
        h1=h1,
        h2=h2,
        ke=factory(ke),
        kd=factory(kd),
        kc=factory(kc),
    )


def derive_keys_v2(master: bytes, factory: CipherFactory = AesCipher) -> TesKeySet:
    """Subkeys for the single-hash-key construction (128/192/256-bit master).

    h = E(0); each cipher subkey takes the leading |K| bits of the
    concatenation of two constant encryptions, so a 128-bit master uses
    only the first constant of each pair.
    """
    if len(master) not in (16, 24, 32):
        raise BadKeyLength("master key must be 16, 24 or 32 bytes")
    em = factory(master)
    klen = len(master)

    def subkey(c1: int, c2: int) -> bytes:
        joined = em.encrypt_block(_constant_block(c1)) + em.encrypt_block(_constant_block(c2))
        return joined[:klen]

    return TesKeySet(
        scheme="xcbv2",
        master=bytes(master),
        h=FieldElement.from_bytes(em.encrypt_block(bytes(16))),
        ke=factory(subkey(0x01, 0x02)),
        kd=factory(subkey(0x03, 0x04)),
        kc=factory(subkey(0x05, 0x06)),
    )


def hctr_keys(master: bytes, factory: CipherFactory = AesCipher) -> TesKeySet:
    """Key set for HCTR, whose two master keys are independent: the first
    16 bytes key the block cipher, the last 16 are the hash key."""
    if len(master) != 32:
        raise BadKeyLength("HCTR takes 32 bytes: cipher key then hash key")
    return TesKeySet(
        scheme="hctr",
        master=bytes(master),
        k=factory(master[:16]),
        h=FieldElement.from_bytes(master[16:]),
    )


def inject_subkeys(keys: TesKeySet, **overrides) -> TesKeySet:
    """Replace individual subkeys (h1/h2/h as field elements, ke/kd/kc/k as
    cipher instances) for attack experiments; the result is flagged as
    non-derived.  With no overrides the key set is returned unchanged."""
    if not overrides:
        return keys
    allowed = {"h1", "h2", "h", "ke", "kd", "kc", "k"}
    unknown = set(overrides) - allowed
    if unknown:
        raise TypeError(f"unknown subkeys: {sorted(unknown)}")
    return dataclasses.replace(keys, derived=False, **overrides)


def _check_bounds(tweak: BitString, payload: BitString) -> None:
    if not BLOCK_BITS <= payload.bitlen <= MAX_BITS:
        raise LengthBounds(
            f"payload must be 128..2^39 bits, got {payload.bitlen}"
        )
    if tweak.bitlen > MAX_BITS:
        raise LengthBounds(f"tweak must be at most 2^39 bits, got {tweak.bitlen}")


def _check_v2_alignment(variant: XcbVariant, payload: BitString, allow_partial: bool) -> None:
    if variant.version == "v2" and payload.bitlen % BLOCK_BITS and not allow_partial:
        raise PartialBlockRejected(
            "this variant is insecure for payloads that are not a multiple of "
            "128 bits; pass the explicit insecure-mode flag to force it"
        )


def _pad_to_blocks(x: BitString) -> BitString:
    if x.bitlen % BLOCK_BITS == 0:
        return x
    return x + BitString.zeros(BLOCK_BITS - x.bitlen % BLOCK_BITS)


def _require_scheme(keys: TesKeySet, scheme: str) -> None:
    if keys.scheme != scheme:
        raise ValueError(f"key set is for {keys.scheme!r}, expected {scheme!r}")


def xcb_encrypt(
    variant: XcbVariant,
    keys: TesKeySet,
    tweak: BitString,
    payload: BitString,
    allow_partial: bool = False,
) -> BitString:
    _require_scheme(keys, "xcb" + variant.version)
    _check_bounds(tweak, payload)
    _check_v2_alignment(variant, payload, allow_partial)
    if variant.version == "v1":
        return _xcb_v1(variant, keys, tweak, payload, forward=True)
    return _xcb_v2(variant, keys, tweak, payload, forward=True)


def xcb_decrypt(
    variant: XcbVariant,
    keys: TesKeySet,
    tweak: BitString,
    payload: BitString,
    allow_partial: bool = False,
) -> BitString:
    _require_scheme(keys, "xcb" + variant.version)
    _check_bounds(tweak, payload)
    _check_v2_alignment(variant, payload, allow_partial)
    if variant.version == "v1":
        return _xcb_v1(variant, keys, tweak, payload, forward=False)
    return _xcb_v2(variant, keys, tweak, payload, forward=False)


def _xcb_v1(
    variant: XcbVariant,
    keys: TesKeySet,
    tweak: BitString,
    data: BitString,
    forward: bool,
) -> BitString:
    """Special first block; counter layer covers blocks 2..m."""
    first = data.msb(BLOCK_BITS)
    tail = data.lsb(data.bitlen - BLOCK_BITS)

    if forward:
        cc = BitString(keys.ke.encrypt_block(first.data))
        s = cc ^ field_to_block(xcb_hash(keys.h1, tail, tweak))
        out_tail = variant.counter(keys.kc, s, tail) if tail.bitlen else tail
        mm = s ^ field_to_block(xcb_hash(keys.h2, out_tail, tweak))
        out_first = BitString(keys.kd.decrypt_block(mm.data))
    else:
        mm = BitString(keys.kd.encrypt_block(first.data))
        s = mm ^ field_to_block(xcb_hash(keys.h2, tail, tweak))
        out_tail = variant.counter(keys.kc, s, tail) if tail.bitlen else tail
        cc = s ^ field_to_block(xcb_hash(keys.h1, out_tail, tweak))
        out_first = BitString(keys.ke.decrypt_block(cc.data))
    return out_first + out_tail


def _xcb_v2(
    variant: XcbVariant,
    keys: TesKeySet,
    tweak: BitString,
    data: BitString,
    forward: bool,
) -> BitString:
    """Special last block; counter layer covers blocks 1..m-1.

    The first hash takes (0^128 || tweak) against the padded head blocks
    followed by 0^128; the second takes (tweak || 0^128) against the padded
    head blocks followed by an explicit length block, with the hash's own
    length term suppressed since the assembled argument already carries it.
    """
    last = data.lsb(BLOCK_BITS)
    head = data.msb(data.bitlen - BLOCK_BITS)

    def first_hash(blocks: BitString) -> BitString:
        arg = _pad_to_blocks(blocks) + BLOCK
        return field_to_block(xcb_hash(keys.h, BLOCK + tweak, arg))

    def second_hash(blocks: BitString) -> BitString:
        lb = xcb_length_block(tweak.bitlen + BLOCK_BITS, blocks.bitlen)
        arg = _pad_to_blocks(blocks) + lb
        return field_to_block(xcb_hash(keys.h, tweak + BLOCK, arg, include_length=False))

    if forward:
        cc = BitString(keys.ke.encrypt_block(last.data))
        s = cc ^ first_hash(head)
        out_head = variant.counter(keys.kc, s, head) if head.bitlen else head
        mm = s ^ second_hash(out_head)
        out_last = BitString(keys.kd.decrypt_block(mm.data))
    else:
        mm = BitString(keys.kd.encrypt_block(last.data))
        s = mm ^ second_hash(head)
        out_head = variant.counter(keys.kc, s, head) if head.bitlen else head
        cc = s ^ first_hash(out_head)
        out_last = BitString(keys.ke.decrypt_block(cc.data))
    return out_head + out_last


def hctr_encrypt(
    keys: TesKeySet,
    tweak: BitString,
    payload: BitString,
    fixed_hash: bool = False,
) -> BitString:
    """Special first block; the tail and tweak are concatenated into a
    single hash input on both sides of the counter layer."""
    _require_scheme(keys, "hctr")
    _check_bounds(tweak, payload)
    hash_fn = hctr_hash_fixed if fixed_hash else hctr_hash
    first = payload.msb(BLOCK_BITS)
    tail = payload.lsb(payload.bitlen - BLOCK_BITS)

    cc = first ^ field_to_block(hash_fn(keys.h, tail + tweak))
    e_cc = BitString(keys.k.encrypt_block(cc.data))
    s = cc ^ e_cc
    out_tail = ctr.xor_ctr(keys.k, s, tail) if tail.bitlen else tail
    out_first = e_cc ^ field_to_block(hash_fn(keys.h, out_tail + tweak))
    return out_first + out_tail


def hctr_decrypt(
    keys: TesKeySet,
    tweak: BitString,
    payload: BitString,
    fixed_hash: bool = False,
) -> BitString:
    _require_scheme(keys, "hctr")
    _check_bounds(tweak, payload)
    hash_fn = hctr_hash_fixed if fixed_hash else hctr_hash
    first = payload.msb(BLOCK_BITS)
    tail = payload.lsb(payload.bitlen - BLOCK_BITS)

    e_cc = first ^ field_to_block(hash_fn(keys.h, tail + tweak))
    cc = BitString(keys.k.decrypt_block(e_cc.data))
    s = cc ^ e_cc
    out_tail = ctr.xor_ctr(keys.k, s, tail) if tail.bitlen else tail
    out_first = cc ^ field_to_block(hash_fn(keys.h, out_tail + tweak))
    return out_first + out_tail
