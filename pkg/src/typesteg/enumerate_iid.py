"""Rank and unrank blocks inside their letter-frequency class.

The class of a block is the set of all words of the same length with the
same count of every symbol. Ordered lexicographically (by alphabet order),
`rank` and `unrank` form an order-preserving bijection between the class
and the integer range [0, class size).

Both directions keep the running count of arrangements of the not yet
consumed suffix up to date with one multiply and one exact divide per
step, instead of recomputing factorials.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .alphabet import Block, Symbol, SymbolAlphabet
from .bigcomb import exact_div, multinomial
from .errors import ClassMismatchError, RankRangeError

__all__ = ["TypeClassIID", "class_of", "class_size", "rank", "unrank"]


@dataclass(frozen=True)
class TypeClassIID:
    """Letter-frequency class: counts are aligned with the alphabet order."""

    alphabet: SymbolAlphabet
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != len(self.alphabet):
            raise ValueError("counts must have one entry per alphabet symbol")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def freqs(self) -> dict[Symbol, int]:
        """Symbol -> count view, including zero-count symbols."""
        return dict(zip(self.alphabet.symbols, self.counts))


def class_of(block: Sequence[Symbol], alphabet: SymbolAlphabet) -> TypeClassIID:
    """Frequency vector of a block; constant on the block's whole class."""
    counts = [0] * len(alphabet)
    for i in alphabet.indices(block):
        counts[i] += 1
    return TypeClassIID(alphabet, tuple(counts))


def class_size(tclass: TypeClassIID) -> int:
    """Number of words sharing the class's frequency vector."""
    return multinomial(tclass.n, tclass.counts)


def _checked_indices(block: Sequence[Symbol], tclass: TypeClassIID) -> list[int]:
    idxs = tclass.alphabet.indices(block)
    counts = [0] * len(tclass.alphabet)
    for i in idxs:
        counts[i] += 1
    if tuple(counts) != tclass.counts:
        raise ClassMismatchError(
            f"block {tuple(block)!r} is not in the class with counts {tclass.counts}"
        )
    return idxs


def rank(block: Sequence[Symbol], tclass: TypeClassIID) -> int:
    """0-based index of a block in the lexicographic order of its class."""
    idxs = _checked_indices(block, tclass)
    counts = list(tclass.counts)
    remaining = tclass.n
    size = class_size(tclass)
    value = 0
    for sym in idxs:
        below = sum(counts[:sym])
        if below:
            # arrangements of the suffix that start with any smaller symbol
            value += exact_div(size * below, remaining)
        size = exact_div(size * counts[sym], remaining)
        counts[sym] -= 1
        remaining -= 1
    return value


def unrank(tclass: TypeClassIID, index: int) -> Block:
    """The unique class member whose rank equals index."""
    size = class_size(tclass)
    if not 0 <= index < size:
        raise RankRangeError(f"index {index} outside [0, {size})")
    counts = list(tclass.counts)
    remaining = tclass.n
    out = []
    for _ in range(remaining):
        prefix = list(accumulate(counts, initial=0))
        # largest symbol whose cumulative arrangement count stays <= index
        lo, hi = 0, len(counts) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if exact_div(size * prefix[mid + 1], remaining) <= index:
                lo = mid + 1
            else:
                hi = mid
        index -= exact_div(size * prefix[lo], remaining)
        size = exact_div(size * counts[lo], remaining)
        counts[lo] -= 1
        remaining -= 1
        out.append(lo)
    return tclass.alphabet.block(out)
