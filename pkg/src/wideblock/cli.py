"""Command-line front end.

Subcommands: encrypt/decrypt files under any of the six modes, run the
attack demonstrations against harness-generated hidden keys, print the
security-bound comparison table, scan a hash key for small subgroup
membership, and compute counter-offset sets.

CLI payloads are whole files, so byte-aligned; bit-granular inputs exist
only inside the attack harness.  Identical (argv, seed, input) always
produces identical output.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import analysis, attacks, modes
from .field import FieldElement, element_of_order
from .modes import TesKeySet
from .polyhash import BitString

_XCB_MODES = modes.VARIANTS
MODE_NAMES = (*_XCB_MODES, "hctr", "hctr-fix")

_KEY_BYTES = {
    "xcbv1": (16,),
    "mxcbv1": (16,),
    "xcbv2": (16, 24, 32),
    "mxcbv2": (16, 24, 32),
    "hctr": (32,),
    "hctr-fix": (32,),
}


def _parse_key(mode: str, key_hex: str) -> bytes:
    key = bytes.fromhex(key_hex)
    if len(key) not in _KEY_BYTES[mode]:
        allowed = "/".join(str(n) for n in _KEY_BYTES[mode])
        raise ValueError(f"mode {mode} needs a {allowed}-byte key, got {len(key)}")
    return key


def _keyset(mode: str, key: bytes) -> TesKeySet:
    if mode in ("xcbv1", "mxcbv1"):
        return modes.derive_keys_v1(key)
    if mode in ("xcbv2", "mxcbv2"):
        return modes.derive_keys_v2(key)
    return modes.hctr_keys(key)


def _apply_mode(mode: str, keys: TesKeySet, tweak: BitString, data: BitString,
                encrypt: bool, allow_partial: bool) -> BitString:
    if mode in _XCB_MODES:
        fn = modes.xcb_encrypt if encrypt else modes.xcb_decrypt
        return fn(_XCB_MODES[mode], keys, tweak, data, allow_partial=allow_partial)
    fn = modes.hctr_encrypt if encrypt else modes.hctr_decrypt
    return fn(keys, tweak, data, fixed_hash=(mode == "hctr-fix"))


def _cmd_crypt(args: argparse.Namespace, encrypt: bool) -> int:
    key = _parse_key(args.mode, args.key)
    tweak = BitString(bytes.fromhex(args.tweak))
    with open(getattr(args, "in"), "rb") as f:
        data = BitString(f.read())
    keys = _keyset(args.mode, key)
    result = _apply_mode(args.mode, keys, tweak, data, encrypt, args.allow_insecure_partial)
    with open(args.out, "wb") as f:
        f.write(result.to_bytes())
    return 0


def _random_block(rng: random.Random) -> BitString:
    return BitString(rng.randbytes(16))


def _cmd_attack(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)

    if args.attack == "hctr-distinguish":
        keys = modes.hctr_keys(rng.randbytes(32))
        oracle = attacks.HctrOracle(keys)
        report = attacks.hctr_distinguish(oracle, args.trials, args.seed)
        print(report.serialize())
        return 0

    if args.attack == "hctr-recover":
        keys = modes.hctr_keys(rng.randbytes(32))
        oracle = attacks.HctrOracle(keys)
        report = attacks.hctr_recover_h(oracle, max_iters=40, seed=args.seed)
        print(report.serialize())
        print(f"hidden_h {keys.h.to_hex()}")
        match = report.recovered_material == keys.h
        print(f"recovered_matches_hidden {'yes' if match else 'no'}")
        return 0 if match else 1

    if args.attack == "hctr-keydep":
        keys = modes.hctr_keys(rng.randbytes(32))
        while True:
            x = _random_block(rng)
            c = modes.hctr_encrypt(keys, BitString.empty(), x + x)
            try:
                recovered = attacks.hctr_keydep_recover(keys.k, x, c)
                break
            except attacks.DegenerateSample:
                continue
        print(f"recovered_h {recovered.to_hex()}")
        print(f"hidden_h {keys.h.to_hex()}")
        match = recovered == keys.h
        print(f"recovered_matches_hidden {'yes' if match else 'no'}")
        return 0 if match else 1

    if args.attack == "xcb-cycle":
        variant = _XCB_MODES[args.mode]
        weak = element_of_order(args.order)
        if variant.version == "v1":
            keys = modes.inject_subkeys(
                modes.derive_keys_v1(rng.randbytes(16)), h1=weak, h2=weak
            )
        else:
            keys = modes.inject_subkeys(modes.derive_keys_v2(rng.randbytes(16)), h=weak)
        if args.swap:
            i, j = (int(part) for part in args.swap.split(","))
        else:
            i = 1 if variant.version == "v2" else 2
            j = i + args.order
        nblocks = j + 1
        tweak = BitString(rng.randbytes(16))
        plaintext = BitString(rng.randbytes(16 * nblocks))
        ciphertext = modes.xcb_encrypt(variant, keys, tweak, plaintext)
        forged = attacks.xcb_cycling_forge(
            variant, tweak, plaintext, ciphertext, args.order, (i, j)
        )
        true_swapped = modes.xcb_encrypt(
            variant, keys, tweak, attacks.swap_blocks(plaintext, i, j)
        )
        match = forged == true_swapped
        print(f"mode {variant.name}")
        print(f"weak_order {args.order}")
        print(f"swap {i},{j}")
        print(f"forgery_valid {'yes' if match else 'no'}")
        return 0 if match else 1

    raise ValueError(f"unknown attack {args.attack!r}")


def _cmd_bounds(args: argparse.Namespace) -> int:
    params = analysis.BoundParams(
        q=analysis.parse_magnitude(args.q),
        ell=args.len,
        sigma=analysis.parse_magnitude(args.sigma),
        n=args.n,
    )
    table = analysis.table1_report(params)
    print(table.as_structured() if args.format == "structured" else table.as_text())
    return 0


def _cmd_weakkey(args: argparse.Namespace) -> int:
    h = FieldElement.from_hex(args.h)
    report = attacks.weak_key_scan(h, args.max_order)
    print(report.serialize())
    return 0


def _cmd_incsets(args: argparse.Namespace) -> int:
    if args.width == 32:
        sample = analysis.sample_w32(args.rmax)
        print(f"width 32 rmax {args.rmax}")
        print(f"w_max_observed {sample.w_max_observed}")
        for r in sorted(sample.w_cardinalities):
            print(f"w[{r}] {sample.w_cardinalities[r]}")
        return 0
    table = analysis.compute_inc_sets(args.width, args.rmax)
    print(f"width {table.width} rmax {table.r_max}")
    print(f"w_max {table.w_max}")
    for r, w in enumerate(table.w_cardinalities):
        print(f"w[{r}] {w}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wideblock",
        description="wide-block enciphering modes, attacks and bound analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, doc in (("encrypt", "encrypt a file"), ("decrypt", "decrypt a file")):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--mode", required=True, choices=MODE_NAMES)
        p.add_argument("--key", required=True, help="key as hex")
        p.add_argument("--tweak", default="", help="tweak as hex (default empty)")
        p.add_argument("--in", required=True, help="input file")
        p.add_argument("--out", required=True, help="output file")
        p.add_argument(
            "--allow-insecure-partial",
            action="store_true",
            help="permit non-multiple-of-16-byte payloads for the v2 variants "
            "despite the known distinguishing attack",
        )

    p = sub.add_parser("attack", help="run an attack demonstration")
    p.add_argument(
        "attack",
        choices=("hctr-distinguish", "hctr-recover", "hctr-keydep", "xcb-cycle"),
    )
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--order", type=int, default=3, help="weak-key order for xcb-cycle")
    p.add_argument("--swap", default=None, help="i,j block indices for xcb-cycle")
    p.add_argument(
        "--mode",
        default="xcbv2",
        choices=("xcbv1", "xcbv2"),
        help="construction attacked by xcb-cycle",
    )

    p = sub.add_parser("bounds", help="print the security-bound comparison table")
    p.add_argument("--q", default="2^30", help="query count (int, 2^k or 2^a+2^b)")
    p.add_argument("--len", type=int, default=(1 << 8) + 1, help="max blocks per query")
    p.add_argument("--sigma", default="2^38+2^30", help="query complexity in blocks")
    p.add_argument("--n", type=int, default=128, help="block bits")
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("weakkey", help="scan a hash key for small-order subgroups")
    p.add_argument("--h", required=True, help="hash key as 32 hex chars")
    p.add_argument("--max-order", type=int, default=1 << 20)

    p = sub.add_parser("incsets", help="counter-offset set analysis")
    p.add_argument("--width", type=int, default=8)
    p.add_argument("--rmax", type=int, default=255)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "encrypt": lambda a: _cmd_crypt(a, encrypt=True),
        "decrypt": lambda a: _cmd_crypt(a, encrypt=False),
        "attack": _cmd_attack,
        "bounds": _cmd_bounds,
        "weakkey": _cmd_weakkey,
        "incsets": _cmd_incsets,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
