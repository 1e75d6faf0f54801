"""Command-line interface: embed, extract, analyze, selftest.

Covers are read either as bytes (every byte is one symbol) or as
newline-delimited tokens. The alphabet order is a public protocol
parameter: the explicit alphabet file's order when one is given, otherwise
ascending byte value (bytes) or sorted token order (tokens).

Exit codes: 0 success, 2 usage error, 3 protocol or resource error,
4 selftest failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from collections import Counter

from . import verify
from .alphabet import SymbolAlphabet
from .enumerate_iid import class_of, class_size
from .errors import CoverCapacityError, FramingError, StegoError
from .randomness import FairBitSource, SeededBitSource, SystemBitSource
from .secret_stream import deframe, frame
from .stego_core import (
    BlockCodec,
    decode_stream,
    encode_stream,
    pairwise_decode,
    pairwise_encode,
)

SEED_ENV_VAR = "TYPESTEG_SEED"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PROTOCOL = 3
EXIT_SELFTEST = 4


class _UsageError(Exception):
    pass


def _read_file(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc


def _write_file(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise _UsageError(f"cannot write {path}: {exc}") from exc


def _load_alphabet(fmt: str, alphabet_file: str | None, cover_symbols) -> SymbolAlphabet:
    if alphabet_file is not None:
        raw = _read_file(alphabet_file)
        if fmt == "bytes":
            return SymbolAlphabet(raw)
        tokens = raw.decode("utf-8").splitlines()
        return SymbolAlphabet(tokens)
    if fmt == "bytes":
        return SymbolAlphabet(range(256))
    return SymbolAlphabet(sorted(set(cover_symbols)))


def _cover_symbols(fmt: str, data: bytes) -> tuple:
    if fmt == "bytes":
        return tuple(data)
    return tuple(data.decode("utf-8").splitlines())


def _symbols_to_file(fmt: str, symbols) -> bytes:
    if fmt == "bytes":
        return bytes(symbols)
    out = "\n".join(symbols)
    return (out + "\n").encode("utf-8") if symbols else b""


def _bit_source(seed: int | None) -> tuple[FairBitSource, str]:
    if seed is None:
        env = os.environ.get(SEED_ENV_VAR)
        if env is not None:
            try:
                seed = int(env)
            except ValueError as exc:
                raise _UsageError(f"bad {SEED_ENV_VAR} value {env!r}") from exc
    if seed is None:
        return SystemBitSource(), "system"
    return SeededBitSource(seed), str(seed)


def _build_codec(args, alphabet: SymbolAlphabet) -> BlockCodec:
    mode = args.mode
    if args.order_k > 0:
        return BlockCodec.markov(alphabet, args.block_n, args.order_k, mode=mode)
    return BlockCodec.iid(alphabet, args.block_n, mode=mode)


def cmd_embed(args) -> int:
    cover_data = _read_file(args.cover_in)
    message = _read_file(args.secret_in)
    cover = _cover_symbols(args.format, cover_data)
    alphabet = _load_alphabet(args.format, args.alphabet_file, cover)
    rand, seed_label = _bit_source(args.seed)
    secret = frame(message, rand)

    if args.mode == "pairwise":
        stego, used = pairwise_encode(cover, secret, alphabet)
        blocks = len(cover) // 2
        params = {"mode": "pairwise"}
    else:
        codec = _build_codec(args, alphabet)
        stego, used = encode_stream(cover, secret, rand, codec)
        blocks = len(cover) // codec.n
        params = {"mode": codec.mode, "n": codec.n, "k": codec.k}

    if secret.shortfall:
        raise CoverCapacityError(secret.shortfall)

    _write_file(args.stego_out, _symbols_to_file(args.format, stego))
    print(f"format={args.format}")
    for key, value in params.items():
        print(f"{key}={value}")
    print(f"alphabet_size={len(alphabet)}")
    print(f"cover_symbols={len(cover)}")
    print(f"blocks={blocks}")
    print(f"payload_bits={secret.payload_bits}")
    print(f"bits_embedded={used}")
    print(f"rate={used / len(cover) if cover else 0.0:.6f}")
    print(f"seed={seed_label}")
    return EXIT_OK


def cmd_extract(args) -> int:
    stego_data = _read_file(args.stego_in)
    stego = _cover_symbols(args.format, stego_data)
    alphabet = _load_alphabet(args.format, args.alphabet_file, stego)

    if args.mode == "pairwise":
        bits = pairwise_decode(stego, alphabet)
    else:
        codec = _build_codec(args, alphabet)
        bits = decode_stream(stego, codec)
    message = deframe(bits)
    _write_file(args.secret_out, message)
    print(f"recovered_bits={len(bits)}")
    print(f"message_bytes={len(message)}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    cover_data = _read_file(args.cover_in)
    cover = _cover_symbols(args.format, cover_data)
    if not cover:
        raise _UsageError("cover is empty")
    alphabet = _load_alphabet(args.format, args.alphabet_file, cover)

    counts = Counter(cover)
    total = len(cover)
    for symbol in sorted(counts, key=alphabet.index):
        print(f"freq[{symbol}]={counts[symbol]}")
    probs = [counts.get(s, 0) / total for s in alphabet.symbols]
    support = [p for p in probs if p > 0]
    print(f"symbols={total}")
    print(f"entropy_bits={verify.entropy(support):.6f}")
    print(f"min_entropy_bits={verify.min_entropy(support):.6f}")
    k = args.order_k
    if k > 0:
        print(f"order_{k}_entropy_bits={_empirical_k_entropy(cover, k):.6f}")

    n = args.block_n
    whole = total - total % n
    if whole:
        acc = 0.0
        blocks = 0
        for start in range(0, whole, n):
            tclass = class_of(cover[start : start + n], alphabet)
            acc += float(
                verify.expected_bits_per_block(class_size(tclass))
            )
            blocks += 1
        print(f"block_n={n}")
        print(f"expected_rate_n{n}={acc / (blocks * n):.6f}")
    return EXIT_OK


def _empirical_k_entropy(cover, k: int) -> float:
    """Plug-in conditional entropy of the next symbol given the previous k."""
    import math

    grams = Counter(tuple(cover[i : i + k + 1]) for i in range(len(cover) - k))
    contexts = Counter()
    for g, c in grams.items():
        contexts[g[:k]] += c
    windows = sum(grams.values())
    if not windows:
        return 0.0
    value = 0.0
    for g, c in grams.items():
        value -= (c / windows) * math.log2(c / contexts[g[:k]])
    return value


def _selftest_checks(quick: bool, inject_bias: bool):
    """(name, callable) pairs; callables raise AssertionError on failure."""
    from .randomness import ScriptedBitSource
    from .secret_stream import BitStream
    from .stego_core import decode_block, encode_block
    from .enumerate_iid import TypeClassIID, rank, unrank
    from .enumerate_markov import markov_class_of

    abc = SymbolAlphabet("abc")
    binary = SymbolAlphabet("ab")

    def worked_block_example():
        codec = BlockCodec.iid(abc, 3)
        rand = ScriptedBitSource("100")  # draw 4 of 6: one-bit chunk
        secret = BitStream("0110")
        block, used = encode_block(tuple("bac"), secret, rand, codec)
        assert block == tuple("cab") and used == 1
        assert decode_block(tuple("cab"), codec) == [0]

    def ranking_example():
        bits = SymbolAlphabet("01")
        tclass = class_of("1010", bits)
        assert rank("1010", tclass) == 4
        for index in range(class_size(tclass)):
            assert rank(unrank(tclass, index), tclass) == index

    def pairwise_stream():
        secret = BitStream("01100")
        stego, used = pairwise_encode("aababaaaabbaaaaabb", secret, binary)
        assert "".join(stego) == "aaabbaaabaabaaaabb" and used == 4
        assert pairwise_decode(stego, binary) == [0, 1, 1, 0]

    def iid_uniformity():
        n_max = 3 if quick else 4
        fn = verify.biased_encode_block if inject_bias else None
        for n in range(2, n_max + 1):
            codec = BlockCodec.iid(abc, n)
            seen = set()
            for word in _all_words(abc, n):
                tclass = class_of(word, abc)
                if tclass.counts in seen:
                    continue
                seen.add(tclass.counts)
                dist = verify.security_oracle(tclass, codec, encode_block_fn=fn)
                assert dist.is_uniform(), f"not uniform on class {tclass.counts}"

    def markov_uniformity():
        n_max = 4 if quick else 5
        for n in range(3, n_max + 1):
            codec = BlockCodec.markov(binary, n, 1)
            seen = set()
            for word in _all_words(binary, n):
                tclass = markov_class_of(word, binary, 1)
                key = (tclass.grams, tclass.counts, tclass.prefix, tclass.suffix)
                if key in seen:
                    continue
                seen.add(key)
                dist = verify.security_oracle(tclass, codec)
                assert dist.is_uniform()

    def rate_bound():
        n_max = 6 if quick else 10
        for n in range(2, n_max + 1):
            for counts in _compositions(n, 3):
                size = class_size(TypeClassIID(abc, counts))
                expected = verify.expected_bits_per_block(size)
                m = size.bit_length() - 1
                assert expected >= m - 2

    def roundtrip_fuzz():
        import random as _random

        rng = _random.Random(7)
        for trial in range(5 if quick else 20):
            n = rng.choice([2, 3, 4, 5])
            cover = tuple(rng.choice("abc") for _ in range(n * rng.randint(1, 6)))
            codec = BlockCodec.iid(abc, n)
            rand = SeededBitSource(trial)
            secret = BitStream([], padding=SeededBitSource(trial + 1000))
            stego, used = encode_stream(cover, secret, rand, codec)
            bits = decode_stream(stego, codec)
            assert len(bits) == used

    return [
        ("worked_block_example", worked_block_example),
        ("ranking_example", ranking_example),
        ("pairwise_stream", pairwise_stream),
        ("iid_uniformity", iid_uniformity),
        ("markov_uniformity", markov_uniformity),
        ("rate_bound", rate_bound),
        ("roundtrip_fuzz", roundtrip_fuzz),
    ]


def _all_words(alphabet: SymbolAlphabet, n: int):
    import itertools

    return itertools.product(alphabet.symbols, repeat=n)


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for tail in _compositions(n - head, parts - 1):
            yield (head,) + tail


def cmd_selftest(args) -> int:
    failures = []
    for name, check in _selftest_checks(args.quick, args.inject_bias):
        start = time.perf_counter()
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - report any failure by name
            elapsed = time.perf_counter() - start
            failures.append(name)
            print(f"check={name} status=fail time_s={elapsed:.3f} error={exc}")
        else:
            elapsed = time.perf_counter() - start
            print(f"check={name} status=ok time_s={elapsed:.3f}")
    if failures:
        print(f"failed_checks={','.join(failures)}")
        return EXIT_SELFTEST
    return EXIT_OK


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--block-n", type=int, default=16, help="block length")
    parser.add_argument(
        "--order-k", type=int, default=0, help="memory order (0 for memoryless)"
    )
    parser.add_argument(
        "--mode",
        choices=("randomized", "deterministic", "pairwise"),
        default="randomized",
    )
    parser.add_argument("--format", choices=("bytes", "tokens"), default="bytes")
    parser.add_argument(
        "--alphabet-file",
        help="explicit ordered alphabet (bytes of the file, or one token per line)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        help=f"64-bit seed for the private bit source (default: ${SEED_ENV_VAR} "
        "or system randomness)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="typesteg",
        description="Distribution-preserving steganography over type classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="hide a secret file inside a cover file")
    p.add_argument("cover_in")
    p.add_argument("secret_in")
    p.add_argument("stego_out")
    _add_common_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the secret from a stego file")
    p.add_argument("stego_in")
    p.add_argument("secret_out")
    _add_common_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("analyze", help="entropy and capacity report for a cover")
    p.add_argument("cover_in")
    _add_common_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("selftest", help="run the built-in verification suite")
    p.add_argument("--quick", action="store_true", help="subset finishing in seconds")
    p.add_argument("--inject-bias", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 1 << 64:
        parser.error("--seed must be a 64-bit unsigned integer")
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StegoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL


if __name__ == "__main__":
    sys.exit(main())
