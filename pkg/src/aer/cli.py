"""Command line entry point: ``aer <command> ...`` (or ``python -m aer``)."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from . import aag, published, order, wire
from .errors import AerError, KeyInversionFailed, PrivateElementSingular
from .matrix import AerMatrix, cardinality, render_views, tensor_det
from .rng import SeededRng

MAX_DIM = 8

_STEPS = (
    ("step 0 (SETUP)", ("A", "B")),
    ("step 1", ("x1", "x2", "x3", "x", "invx", "APrime")),
    ("step 2", ("y1", "y2", "y3", "y", "iny", "BPrime")),
    ("step 3", ("xprime1", "xprime2", "xprime3", "xprime", "KEYalice")),
    ("step 4", ("yprime1", "yprime2", "yprime3", "yprime", "invKey", "KEYbob")),
)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return default if raw is None else int(raw)


def _dim(value: str) -> int:
    n = int(value)
    if not 1 <= n <= MAX_DIM:
        raise argparse.ArgumentTypeError(f"dimension must be in 1..{MAX_DIM}")
    return n


def _matrix(value: str) -> AerMatrix:
    try:
        return AerMatrix.parse(value)
    except AerError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _demo_transcript(transport: str) -> aag.Transcript:
    p = published.PARAMS
    if transport == "local":
        return aag.run_session(p, published.WORD_A, published.WORD_B).transcript
    res = wire.run_handshake_over_channel(
        p, published.WORD_A, published.WORD_B, transport=transport
    )
    return aag.session_transcript(p, res.alice, res.bob)


def cmd_demo(args: argparse.Namespace) -> int:
    t = _demo_transcript(args.transport)
    print(f"dim = 2; limit = (256^(dim^2)) - 2 = {256 ** 4 - 2}")
    print(f"x = f(A) = {published.WORD_A.render('a')}")
    print(f"y = g(B) = {published.WORD_B.render('b')}")
    mismatches = []
    for title, names in _STEPS:
        print(f"\n{title}")
        for name in names:
            value = t[name]
            flag = ""
            expected = published.EXPECTED.get(name)
            if expected is not None and value != expected:
                mismatches.append(name)
                flag = f"   MISMATCH, expected {aag.format_value(expected)}"
            print(f"{name} = {aag.format_value(value)}{flag}")
    print()
    if t["KEYalice"] == t["KEYbob"]:
        print(f"shared key = {t['KEYalice']}")
    if mismatches:
        print(f"FAIL: {len(mismatches)} value(s) differ: {', '.join(mismatches)}")
        return 1
    print("OK: all intermediate values match the published example")
    return 0


def cmd_handshake(args: argparse.Namespace) -> int:
    cfg = aag.SessionConfig(args.dim, args.set_size, args.word_len, args.seed)
    rng = SeededRng(cfg.seed)
    params = aag.PublicParams.random(cfg.dim, cfg.set_size, cfg.set_size, rng)
    transport, port = ("tcp", args.tcp) if args.tcp is not None else ("duplex", 0)
    for attempt in range(1, cfg.max_attempts + 1):
        word_a = aag.random_word(cfg.set_size, cfg.word_len, rng)
        word_b = aag.random_word(cfg.set_size, cfg.word_len, rng)
        try:
            res = wire.run_handshake_over_channel(
                params, word_a, word_b, transport=transport, port=port, reveal=args.reveal
            )
        except (PrivateElementSingular, KeyInversionFailed) as exc:
            print(f"attempt {attempt}: aborted ({exc})")
            continue
        print(f"dim={cfg.dim} set_size={cfg.set_size} word_len={cfg.word_len} seed={cfg.seed} "
              f"transport={transport}")
        print(f"f = {word_a.render('a')}")
        print(f"g = {word_b.render('b')}")
        print(f"KEYalice = {res.key_alice}")
        print(f"KEYbob   = {res.key_bob}")
        agree = res.key_alice == res.key_bob
        print("keys agree" if agree else "KEYS DIFFER")
        return 0 if agree else 1
    print(f"gave up after {cfg.max_attempts} singular draws", file=sys.stderr)
    return 1


def cmd_order(args: argparse.Namespace) -> int:
    d = order.multiplicative_order(args.matrix)
    if d is None:
        print(f"none ({order.classify(args.matrix).value})")
    else:
        print(d)
    return 0


def cmd_inverse(args: argparse.Namespace) -> int:
    res = order.verified_inverse(args.matrix)
    note = " (fallback)" if res.via_fallback else ""
    print(f"{res.kind.value}{note}: {res.value if res.value is not None else '-'}")
    return 0


def cmd_det(args: argparse.Namespace) -> int:
    print(tensor_det(args.matrix))
    return 0


def cmd_cycle(args: argparse.Namespace) -> int:
    info = order.brent_cycle(args.matrix) if args.brent else order.floyd_cycle(args.matrix)
    print(f"tail = {info.tail}")
    print(f"period = {info.period}")
    print(f"terminal = {info.terminal}")
    print(f"classification = {info.classification.value}")
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    res = order.census(args.dim, args.samples, SeededRng(args.seed))
    expected = order.expected_invertible_fraction(args.dim)
    print(f"dim = {res.dim}, samples = {res.samples}, seed = {args.seed}")
    print(f"generators = {res.invertible} ({res.fraction:.6f}); closed form {expected:.6f}")
    print(f"shortcut failures = {res.shortcut_failures} ({res.shortcut_failure_rate:.4%} of generators)")
    return 0


def cmd_cardinality(args: argparse.Namespace) -> int:
    print(cardinality(args.dim))
    return 0


def cmd_views(args: argparse.Namespace) -> int:
    for name, text in render_views(args.matrix).items():
        print(f"{name}: {text}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aer", description="Matrix-ring AAG key exchange toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("demo", help="replay the published 2x2 example and check every value")
    s.add_argument("--transport", choices=("local", "duplex", "tcp"), default="local")
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("handshake", help="seeded random session between two endpoints")
    s.add_argument("--dim", type=_dim, default=_env_int("AER_DIM", 2))
    s.add_argument("--set-size", type=int, default=_env_int("AER_SET_SIZE", 100))
    s.add_argument("--word-len", type=int, default=_env_int("AER_WORD_LEN", 8))
    s.add_argument("--seed", type=int, default=_env_int("AER_SEED", 0))
    where = s.add_mutually_exclusive_group()
    where.add_argument("--tcp", type=int, metavar="PORT", help="TCP on 127.0.0.1 (0 picks a port)")
    where.add_argument("--loopback", action="store_true", help="in-process socket pair (default)")
    s.add_argument("--reveal", action="store_true", help="INSECURE: exchange keys to compare them")
    s.set_defaults(func=cmd_handshake)

    for name, func, text in (
        ("order", cmd_order, "multiplicative order"),
        ("inverse", cmd_inverse, "verified inverse (or spurious inverse)"),
        ("det", cmd_det, "tensor determinant"),
        ("cycle", cmd_cycle, "tail/period/terminal of the power sequence"),
        ("views", cmd_views, "decimal, bit-tensor and polynomial renderings"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("matrix", type=_matrix, help="e.g. '{{165,182},{199,138}}'")
        s.set_defaults(func=func)
        if name == "cycle":
            s.add_argument("--brent", action="store_true", help="use Brent instead of Floyd")

    s = sub.add_parser("census", help="share of generators among random elements")
    s.add_argument("--dim", type=_dim, default=_env_int("AER_DIM", 2))
    s.add_argument("--samples", type=int, default=100000)
    s.add_argument("--seed", type=int, default=_env_int("AER_SEED", 0))
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("cardinality", help="number of n x n elements")
    s.add_argument("--dim", type=_dim, default=_env_int("AER_DIM", 2))
    s.set_defaults(func=cmd_cardinality)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
