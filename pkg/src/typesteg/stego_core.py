"""The block encoders and decoders.

Three schemes share this module:

* the pairwise codec, which carries one secret bit in the order of every
  unequal adjacent symbol pair;
* the randomized block codec, which replaces each cover block by the
  member of its type class whose index encodes the next secret bits, with
  a randomized per-block bit count so that the emitted index is exactly
  uniform on the class;
* the deterministic variant, which uses only the largest power-of-two
  prefix of each class and passes other blocks through unchanged.

The block codec is parameterized by the type-class enumerator, so the
letter-frequency and the sliding-gram schemes run through one pipeline.

All parameters of a codec (alphabet order, block length, memory order,
mode) are public protocol data; there is no key. Encoding is sequential
per stream because each block's consumed bit count shifts the secret
offset of the next block; decoding of distinct blocks is independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .alphabet import Block, Symbol, SymbolAlphabet
from .enumerate_iid import TypeClassIID, class_of, class_size, rank, unrank
from .enumerate_markov import (
    TypeClassMarkov,
    markov_class_count,
    markov_class_of,
    markov_rank,
    markov_unrank,
)
from .errors import RankRangeError
from .randomness import FairBitSource, uniform_below
from .secret_stream import BitStream, int_to_bits

__all__ = [
    "Mode",
    "SizeExpansion",
    "size_expansion",
    "payload_bits_at",
    "chunk_base",
    "sample_payload_length",
    "BlockCodec",
    "encode_block",
    "decode_block",
    "encode_block_deterministic",
    "decode_block_deterministic",
    "encode_stream",
    "decode_stream",
    "pairwise_encode",
    "pairwise_decode",
]

Mode = Literal["randomized", "deterministic"]


@dataclass(frozen=True)
class SizeExpansion:
    """Binary expansion of a class size.

    alpha holds the digits most-significant-first, so alpha[0] is the bit
    worth 2**m and is always 1.
    """

    size: int
    m: int
    alpha: tuple[int, ...]

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if self.m != self.size.bit_length() - 1 or self.alpha[0] != 1:
            raise ValueError("inconsistent expansion")

    def bit(self, i: int) -> int:
        """Digit worth 2**i."""
        return self.alpha[self.m - i]


def size_expansion(size: int) -> SizeExpansion:
    """Binary digits of a class size, leading 1 first."""
    if size < 1:
        raise ValueError("size must be at least 1")
    digits = tuple(int(c) for c in bin(size)[2:])
    return SizeExpansion(size=size, m=len(digits) - 1, alpha=digits)


def payload_bits_at(size: int, index: int) -> int:
    """Number of secret bits carried by the class element at this index.

    The set bits of size split [0, size) into consecutive chunks, one of
    width 2**i per set bit i, highest bit first; an index falling in the
    2**i chunk carries i bits. This is also the decoder's rule: the result
    is the largest i with bit i of size set and index below the running
    top-down sum of chunk widths through 2**i.
    """
    if not 0 <= index < size:
        raise RankRangeError(f"index {index} outside [0, {size})")
    for i in range(size.bit_length() - 1, -1, -1):
        if (size >> i) & 1 and index < (size >> i) << i:
            return i
    raise AssertionError("unreachable: chunks cover [0, size)")


def chunk_base(size: int, nbits: int) -> int:
    """First index of the chunk whose elements carry nbits secret bits."""
    return (size >> (nbits + 1)) << (nbits + 1)


def sample_payload_length(size: int, rand: FairBitSource) -> int:
    """Draw the per-block secret bit count.

    Returns i with probability (bit i of size) * 2**i / size, by locating a
    uniform draw on [0, size) inside the chunk decomposition.
    """
    return payload_bits_at(size, uniform_below(size, rand))


@dataclass(frozen=True)
class BlockCodec:
    """Public protocol parameters of a block scheme."""

    alphabet: SymbolAlphabet
    n: int
    kind: Literal["iid", "markov"] = "iid"
    k: int = 0
    mode: Mode = "randomized"

    def __post_init__(self):
        if self.mode not in ("randomized", "deterministic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.kind not in ("iid", "markov"):
            raise ValueError(f"unknown enumerator kind {self.kind!r}")
        if self.kind == "iid" and self.k:
            raise ValueError("iid codec takes no memory order")
        if self.k < 0:
            raise ValueError("memory order must be nonnegative")
        if self.n <= max(1, 2 * self.k):
            raise ValueError(
                f"block length {self.n} must exceed {max(1, 2 * self.k)}"
            )

    @classmethod
    def iid(cls, alphabet: SymbolAlphabet, n: int, mode: Mode = "randomized") -> "BlockCodec":
        return cls(alphabet=alphabet, n=n, kind="iid", k=0, mode=mode)

    @classmethod
    def markov(
        cls, alphabet: SymbolAlphabet, n: int, k: int, mode: Mode = "randomized"
    ) -> "BlockCodec":
        return cls(alphabet=alphabet, n=n, kind="markov", k=k, mode=mode)

    # A sliding-gram class of order 0 is exactly the letter-frequency
    # class, so order 0 runs through the polynomial iid enumerator.
    @property
    def _is_markov(self) -> bool:
        return self.kind == "markov" and self.k > 0

    def type_class_of(self, block: Sequence[Symbol]):
        if self._is_markov:
            return markov_class_of(block, self.alphabet, self.k)
        return class_of(block, self.alphabet)

    def class_size(self, tclass) -> int:
        if isinstance(tclass, TypeClassMarkov):
            return markov_class_count(tclass)
        return class_size(tclass)

    def rank(self, block: Sequence[Symbol], tclass) -> int:
        if isinstance(tclass, TypeClassMarkov):
            return markov_rank(block, tclass)
        return rank(block, tclass)

    def unrank(self, tclass, index: int) -> Block:
        if isinstance(tclass, TypeClassMarkov):
            return markov_unrank(tclass, index)
        return unrank(tclass, index)


def encode_block(
    block: Sequence[Symbol],
    secret: BitStream,
    rand: FairBitSource,
    codec: BlockCodec,
) -> tuple[Block, int]:
    """Replace a block by the same-class member carrying the next secret bits.

    Draws the bit count for this block, reads that many secret bits as an
    integer (first bit most significant), and emits the class member at the
    chunk base plus that integer. Returns (stego block, bits consumed).
    """
    if codec.mode != "randomized":
        raise ValueError("encode_block requires a randomized codec")
    if len(block) != codec.n:
        raise ValueError(f"block length {len(block)} differs from codec n={codec.n}")
    tclass = codec.type_class_of(block)
    size = codec.class_size(tclass)
    nbits = sample_payload_length(size, rand)
    value = secret.read_int(nbits)
    return codec.unrank(tclass, chunk_base(size, nbits) + value), nbits


def decode_block(block: Sequence[Symbol], codec: BlockCodec) -> list[int]:
    """Recover the secret bits carried by one block.

    Every block of the right length decodes: its index within its own class
    determines both how many bits it carries and their value.
    """
    if len(block) != codec.n:
        raise ValueError(f"block length {len(block)} differs from codec n={codec.n}")
    tclass = codec.type_class_of(block)
    size = codec.class_size(tclass)
    index = codec.rank(block, tclass)
    nbits = payload_bits_at(size, index)
    return int_to_bits(index - chunk_base(size, nbits), nbits)


def encode_block_deterministic(
    block: Sequence[Symbol], secret: BitStream, codec: BlockCodec
) -> tuple[Block, int]:
    """Randomness-free variant using the largest power-of-two class prefix.

    If the cover block's index is below 2**m (m the floor log2 of the class
    size), read m secret bits and emit the member at that index; otherwise
    transmit the block unchanged and carry nothing.
    """
    if codec.mode != "deterministic":
        raise ValueError("encode_block_deterministic requires a deterministic codec")
    if len(block) != codec.n:
        raise ValueError(f"block length {len(block)} differs from codec n={codec.n}")
    tclass = codec.type_class_of(block)
    size = codec.class_size(tclass)
    top = size.bit_length() - 1
    if codec.rank(block, tclass) < 1 << top:
        value = secret.read_int(top)
        return codec.unrank(tclass, value), top
    return tuple(block), 0


def decode_block_deterministic(block: Sequence[Symbol], codec: BlockCodec) -> list[int]:
    """Inverse of the deterministic encoder."""
    if len(block) != codec.n:
        raise ValueError(f"block length {len(block)} differs from codec n={codec.n}")
    tclass = codec.type_class_of(block)
    size = codec.class_size(tclass)
    top = size.bit_length() - 1
    index = codec.rank(block, tclass)
    if index < 1 << top:
        return int_to_bits(index, top)
    return []


def encode_stream(
    cover: Sequence[Symbol],
    secret: BitStream,
    rand: FairBitSource | None,
    codec: BlockCodec,
) -> tuple[Block, int]:
    """Encode a whole cover, block by block.

    A trailing partial block is passed through unchanged and carries no
    bits. Returns (stego symbols, total secret bits consumed).
    """
    symbols = tuple(cover)
    n = codec.n
    out: list[Symbol] = []
    used = 0
    whole = len(symbols) - len(symbols) % n
    for start in range(0, whole, n):
        block = symbols[start : start + n]
        if codec.mode == "randomized":
            if rand is None:
                raise ValueError("randomized codec needs a bit source")
            stego, nbits = encode_block(block, secret, rand, codec)
        else:
            stego, nbits = encode_block_deterministic(block, secret, codec)
        out.extend(stego)
        used += nbits
    out.extend(symbols[whole:])
    return tuple(out), used


def decode_stream(stego: Sequence[Symbol], codec: BlockCodec) -> list[int]:
    """Concatenated per-block decodings; a trailing partial block carries nothing."""
    symbols = tuple(stego)
    n = codec.n
    bits: list[int] = []
    whole = len(symbols) - len(symbols) % n
    for start in range(0, whole, n):
        block = symbols[start : start + n]
        if codec.mode == "randomized":
            bits.extend(decode_block(block, codec))
        else:
            bits.extend(decode_block_deterministic(block, codec))
    return bits


def pairwise_encode(
    cover: Sequence[Symbol], secret: BitStream, alphabet: SymbolAlphabet
) -> tuple[Block, int]:
    """Carry one secret bit in the order of every unequal adjacent pair.

    Equal pairs pass unchanged. An unequal pair is emitted in ascending
    alphabet order for a 0 bit and descending for a 1 bit. A trailing odd
    symbol passes through. Returns (stego symbols, bits consumed).
    """
    symbols = tuple(cover)
    out: list[Symbol] = []
    used = 0
    whole = len(symbols) - len(symbols) % 2
    for i in range(0, whole, 2):
        a, b = symbols[i], symbols[i + 1]
        if a == b:
            out.extend((a, b))
            continue
        lo, hi = sorted((a, b), key=alphabet.index)
        if secret.read_bit():
            out.extend((hi, lo))
        else:
            out.extend((lo, hi))
        used += 1
    out.extend(symbols[whole:])
    return tuple(out), used


def pairwise_decode(stego: Sequence[Symbol], alphabet: SymbolAlphabet) -> list[int]:
    """Inverse of pairwise_encode: ascending pairs read 0, descending read 1."""
    symbols = tuple(stego)
    bits: list[int] = []
    whole = len(symbols) - len(symbols) % 2
    for i in range(0, whole, 2):
        a, b = symbols[i], symbols[i + 1]
        if a != b:
            bits.append(1 if alphabet.index(a) > alphabet.index(b) else 0)
    return bits
