"""Distribution-preserving steganography over type classes.

A cover block is replaced by another member of its type class (same letter
frequencies, or same sliding-gram counts with pinned block boundaries), so
the stego stream is distributed exactly like the cover stream while the
member's index carries the secret bits.
"""

from .alphabet import Block, Symbol, SymbolAlphabet
from .bigcomb import binomial, binomial_next, multinomial
from .enumerate_iid import TypeClassIID, class_of, class_size, rank, unrank
from .enumerate_markov import (
    TypeClassMarkov,
    markov_class_count,
    markov_class_of,
    markov_rank,
    markov_unrank,
)
from .errors import (
    BitsExhaustedError,
    ClassMismatchError,
    CoverCapacityError,
    FramingError,
    InexactDivisionError,
    RankRangeError,
    ResourceLimitError,
    StegoError,
    UnknownSymbolError,
)
from .randomness import (
    FairBitSource,
    ScriptedBitSource,
    SeededBitSource,
    SystemBitSource,
    uniform_below,
)
from .secret_stream import BitStream, FramedSecret, deframe, frame
from .stego_core import (
    BlockCodec,
    SizeExpansion,
    decode_block,
    decode_block_deterministic,
    decode_stream,
    encode_block,
    encode_block_deterministic,
    encode_stream,
    pairwise_decode,
    pairwise_encode,
    size_expansion,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "Symbol",
    "SymbolAlphabet",
    "binomial",
    "binomial_next",
    "multinomial",
    "TypeClassIID",
    "class_of",
    "class_size",
    "rank",
    "unrank",
    "TypeClassMarkov",
    "markov_class_of",
    "markov_class_count",
    "markov_rank",
    "markov_unrank",
    "FairBitSource",
    "SystemBitSource",
    "SeededBitSource",
    "ScriptedBitSource",
    "uniform_below",
    "BitStream",
    "FramedSecret",
    "frame",
    "deframe",
    "BlockCodec",
    "SizeExpansion",
    "size_expansion",
    "encode_block",
    "decode_block",
    "encode_block_deterministic",
    "decode_block_deterministic",
    "encode_stream",
    "decode_stream",
    "pairwise_encode",
    "pairwise_decode",
    "StegoError",
    "UnknownSymbolError",
    "ClassMismatchError",
    "RankRangeError",
    "InexactDivisionError",
    "BitsExhaustedError",
    "FramingError",
    "CoverCapacityError",
    "ResourceLimitError",
]
