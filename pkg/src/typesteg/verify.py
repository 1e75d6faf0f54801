"""Brute-force security oracles, capacity measurement and entropy estimators.

Everything that checks the distribution-preservation claim runs in exact
rational arithmetic over exhaustively enumerated classes; floating point
appears only in entropy estimates, simulated rates and chi-square
p-values.

The exact oracle enumerates the encoder's randomness directly: every
value of the uniform draw on [0, class size) and every secret prefix, each
with its exact weight, instead of unrolling the bit sampler's rejection
tree (whose own uniformity is checked separately). Oracle enumeration over
input blocks is order-independent, so results could be merged from
parallel workers; the implementation here is sequential.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from scipy.stats import chi2

from .alphabet import Block, Symbol, SymbolAlphabet
from .enumerate_iid import TypeClassIID, class_of, class_size
from .enumerate_markov import TypeClassMarkov, markov_class_count, markov_class_of
from .errors import ResourceLimitError
from .randomness import ScriptedBitSource, SeededBitSource
from .secret_stream import BitStream, frame, int_to_bits
from .stego_core import (
    BlockCodec,
    encode_block,
    encode_block_deterministic,
    encode_stream,
)

__all__ = [
    "ExactDistribution",
    "security_oracle",
    "biased_encode_block",
    "expected_bits_per_block",
    "expected_rate",
    "IIDSource",
    "MarkovSource",
    "TrendRow",
    "capacity_trend",
    "format_trend",
    "entropy",
    "min_entropy",
    "k_order_entropy",
    "chi_square_uniformity",
]

ORACLE_SUPPORT_LIMIT = 10_000
_ORACLE_SPACE_LIMIT = 2_000_000


@dataclass
class ExactDistribution:
    """A probability distribution over blocks with exact rational masses."""

    support: list[Block]
    mass: dict[Block, Fraction]

    def __post_init__(self):
        total = sum(self.mass.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"masses sum to {total}, expected 1")

    def is_uniform(self) -> bool:
        """True when every support element has mass exactly 1/|support|."""
        share = Fraction(1, len(self.support))
        return all(self.mass.get(b, Fraction(0)) == share for b in self.support)

    def max_mass(self) -> Fraction:
        return max(self.mass.values())


def _class_members(tclass) -> list[Block]:
    """All class members by direct enumeration, independent of unrank."""
    alphabet: SymbolAlphabet = tclass.alphabet
    if isinstance(tclass, TypeClassMarkov):
        n, k = tclass.n, tclass.k
        want = dict(zip(tclass.grams, tclass.counts))
        prefix, suffix = tclass.prefix, tclass.suffix
    else:
        n, k = tclass.n, None
        want = tclass.counts
    if len(alphabet) ** n > _ORACLE_SPACE_LIMIT:
        raise ResourceLimitError(
            f"cannot enumerate {len(alphabet)}^{n} candidate words"
        )
    members = []
    for word in itertools.product(range(len(alphabet)), repeat=n):
        if k is None:
            counts = [0] * len(alphabet)
            for i in word:
                counts[i] += 1
            if tuple(counts) == want:
                members.append(alphabet.block(word))
        else:
            if word[:k] != prefix or (k and word[n - k :] != suffix):
                continue
            seen: dict[tuple[int, ...], int] = {}
            for i in range(n - k):
                g = word[i : i + k + 1]
                seen[g] = seen.get(g, 0) + 1
            if seen == want:
                members.append(alphabet.block(word))
    return members


def security_oracle(
    tclass,
    codec: BlockCodec,
    *,
    encode_block_fn: Callable | None = None,
) -> ExactDistribution:
    """Exact output distribution of the encoder over one class.

    The input block is uniform on the class (all members are equiprobable
    under the source), the secret bits are fair, and the randomized draw is
    uniform on [0, class size); every combination is enumerated with its
    exact rational weight and pushed through the real encoder.

    encode_block_fn substitutes a different block encoder, e.g. a
    deliberately biased one for negative controls.
    """
    members = _class_members(tclass)
    size = len(members)
    if size > ORACLE_SUPPORT_LIMIT:
        raise ResourceLimitError(
            f"class support {size} exceeds the oracle limit {ORACLE_SUPPORT_LIMIT}"
        )
    member_set = set(members)
    top = size.bit_length() - 1
    draw_width = (size - 1).bit_length()
    mass: dict[Block, Fraction] = {b: Fraction(0) for b in members}

    def account(block: Block, weight: Fraction) -> None:
        if block not in member_set:
            raise AssertionError(f"encoder left the class: {block!r}")
        mass[block] += weight

    if codec.mode == "randomized":
        fn = encode_block_fn or encode_block
        weight = Fraction(1, size * size * (1 << top))
        for u in members:
            for draw in range(size):
                for prefix in range(1 << top):
                    rand = ScriptedBitSource(int_to_bits(draw, draw_width))
                    secret = BitStream(int_to_bits(prefix, top))
                    block, _ = fn(u, secret, rand, codec)
                    account(block, weight)
    else:
        fn = encode_block_fn or encode_block_deterministic
        weight = Fraction(1, size * (1 << top))
        for u in members:
            for prefix in range(1 << top):
                secret = BitStream(int_to_bits(prefix, top))
                block, _ = fn(u, secret, codec)
                account(block, weight)
    return ExactDistribution(support=members, mass=mass)


def biased_encode_block(block, secret, rand, codec) -> tuple[Block, int]:
    """Deliberately broken encoder for negative controls: always emits the
    lexicographically first class member. Consumes bits like the honest
    encoder but ignores them."""
    honest, nbits = encode_block(block, secret, rand, codec)
    tclass = codec.type_class_of(honest)
    return codec.unrank(tclass, 0), nbits


def expected_bits_per_block(size: int, mode: str = "randomized") -> Fraction:
    """Exact expected secret bits carried by a block of the given class size."""
    if size < 1:
        raise ValueError("size must be at least 1")
    if mode == "randomized":
        # each set bit i contributes i with probability 2**i / size
        return Fraction(
            sum(i << i for i in range(size.bit_length()) if (size >> i) & 1), size
        )
    if mode == "deterministic":
        top = size.bit_length() - 1
        return Fraction(top << top, size)
    raise ValueError(f"unknown mode {mode!r}")


def expected_rate(tclass, codec: BlockCodec) -> Fraction:
    """Exact expected secret bits per cover symbol for one class."""
    return expected_bits_per_block(codec.class_size(tclass), codec.mode) / tclass.n


@dataclass(frozen=True)
class IIDSource:
    """Memoryless cover source with explicit symbol probabilities."""

    alphabet: SymbolAlphabet
    probs: tuple[float, ...]

    def __post_init__(self):
        _check_probs(self.probs, len(self.alphabet))

    def sample(self, rng: random.Random, length: int) -> Block:
        return tuple(rng.choices(self.alphabet.symbols, weights=self.probs, k=length))

    def codec(self, n: int, mode: str = "randomized") -> BlockCodec:
        return BlockCodec.iid(self.alphabet, n, mode=mode)


@dataclass(frozen=True)
class MarkovSource:
    """Finite-memory cover source defined by a context transition table."""

    alphabet: SymbolAlphabet
    k: int
    transitions: Mapping[tuple, tuple[float, ...]]
    initial: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("MarkovSource needs k >= 1")
        if len(self.initial) != self.k:
            raise ValueError("initial context must have length k")
        for ctx in itertools.product(self.alphabet.symbols, repeat=self.k):
            if ctx not in self.transitions:
                raise ValueError(f"missing transition row for context {ctx!r}")
            _check_probs(self.transitions[ctx], len(self.alphabet))

    def sample(self, rng: random.Random, length: int) -> Block:
        out = list(self.initial[: min(self.k, length)])
        while len(out) < length:
            ctx = tuple(out[-self.k :])
            out.extend(
                rng.choices(self.alphabet.symbols, weights=self.transitions[ctx])
            )
        return tuple(out[:length])

    def codec(self, n: int, mode: str = "randomized") -> BlockCodec:
        return BlockCodec.markov(self.alphabet, n, self.k, mode=mode)


@dataclass(frozen=True)
class TrendRow:
    n: int
    blocks: int
    symbols: int
    secret_bits: int
    rate: float


def capacity_trend(
    source: IIDSource | MarkovSource,
    block_sizes: Sequence[int],
    trials: int,
    seed: int,
    mode: str = "randomized",
) -> list[TrendRow]:
    """Measured secret bits per cover symbol for each block length.

    For each n, synthesizes `trials` blocks from the source, embeds a
    framed random payload, and reports the consumed bits per symbol.
    """
    rng = random.Random(seed)
    rows = []
    for n in block_sizes:
        cover = source.sample(rng, trials * n)
        rand = SeededBitSource(rng.getrandbits(64))
        secret = frame(rng.randbytes(16), SeededBitSource(rng.getrandbits(64)))
        _, bits = encode_stream(cover, secret, rand, source.codec(n, mode))
        rows.append(
            TrendRow(
                n=n,
                blocks=trials,
                symbols=trials * n,
                secret_bits=bits,
                rate=bits / (trials * n),
            )
        )
    return rows


def format_trend(rows: Sequence[TrendRow], sep: str = "\t") -> str:
    """Delimiter-separated table of a capacity trend, for plotting."""
    header = sep.join(("n", "blocks", "symbols", "secret_bits", "rate"))
    lines = [header]
    for r in rows:
        lines.append(
            sep.join(
                (str(r.n), str(r.blocks), str(r.symbols), str(r.secret_bits), f"{r.rate:.6f}")
            )
        )
    return "\n".join(lines)


def _check_probs(probs: Sequence[float], expected_len: int) -> None:
    if len(probs) != expected_len:
        raise ValueError(f"expected {expected_len} probabilities, got {len(probs)}")
    if any(p < 0 for p in probs):
        raise ValueError("probabilities must be nonnegative")
    if abs(sum(probs) - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {sum(probs)}, expected 1")


def entropy(probs: Sequence[float]) -> float:
    """Shannon entropy in bits, -sum p log2 p."""
    _check_probs(probs, len(probs))
    return -sum(p * math.log2(p) for p in probs if p > 0)


def min_entropy(probs: Sequence[float]) -> float:
    """Min-entropy in bits, -log2 of the most probable symbol."""
    _check_probs(probs, len(probs))
    return -math.log2(max(probs))


def k_order_entropy(
    alphabet: SymbolAlphabet,
    transitions: Mapping[tuple, Sequence[float]],
    k: int,
) -> float:
    """Conditional entropy of the next symbol given the previous k, in bits.

    Context weights are the stationary distribution of the context chain,
    found by power iteration.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    contexts = list(itertools.product(alphabet.symbols, repeat=k))
    for ctx in contexts:
        if ctx not in transitions:
            raise ValueError(f"missing transition row for context {ctx!r}")
        _check_probs(transitions[ctx], len(alphabet))
    ctx_pos = {ctx: i for i, ctx in enumerate(contexts)}
    pi = [1.0 / len(contexts)] * len(contexts)
    for _ in range(100_000):
        nxt = [0.0] * len(contexts)
        for ctx, weight in zip(contexts, pi):
            if weight == 0.0:
                continue
            row = transitions[ctx]
            for j, symbol in enumerate(alphabet.symbols):
                if row[j]:
                    nxt[ctx_pos[ctx[1:] + (symbol,)]] += weight * row[j]
        drift = sum(abs(a - b) for a, b in zip(nxt, pi))
        pi = nxt
        if drift < 1e-14:
            break
    value = 0.0
    for ctx, weight in zip(contexts, pi):
        if weight == 0.0:
            continue
        row = transitions[ctx]
        value -= weight * sum(p * math.log2(p) for p in row if p > 0)
    return value


def chi_square_uniformity(samples: Sequence[Sequence[Symbol]], tclass) -> tuple[float, float]:
    """Pearson statistic and p-value against the uniform-on-class null.

    Requires at least 5 expected observations per class member; rejects
    larger classes rather than produce a meaningless statistic. Every
    sample must belong to the class.
    """
    if isinstance(tclass, TypeClassMarkov):
        size = markov_class_count(tclass)
    else:
        size = class_size(tclass)
    if not samples:
        raise ValueError("no samples")
    expected = len(samples) / size
    if expected < 5:
        raise ValueError(
            f"class of size {size} needs at least {5 * size} samples, got {len(samples)}"
        )
    observed = Counter(tuple(s) for s in samples)
    alphabet = tclass.alphabet
    for block in observed:
        if isinstance(tclass, TypeClassMarkov):
            ok = markov_class_of(block, alphabet, tclass.k) == tclass
        else:
            ok = class_of(block, alphabet) == tclass
        if not ok:
            raise ValueError(f"sample {block!r} is not in the class")
    stat = sum((count - expected) ** 2 / expected for count in observed.values())
    stat += (size - len(observed)) * expected
    return stat, float(chi2.sf(stat, size - 1))
