"""Ordered symbol alphabets.

A block is a tuple of symbols. The position of a symbol in the alphabet
defines the total order used for every lexicographic comparison in the
library, so two parties only need to agree on the alphabet sequence.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .errors import UnknownSymbolError

Symbol = Hashable
Block = tuple

__all__ = ["Symbol", "Block", "SymbolAlphabet"]


class SymbolAlphabet:
    """A finite ordered set of distinct symbols."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[Symbol]):
        self.symbols = tuple(symbols)
        self._index = {s: i for i, s in enumerate(self.symbols)}
        if not self.symbols:
            raise ValueError("alphabet must not be empty")
        if len(self._index) != len(self.symbols):
            raise ValueError("alphabet contains duplicate symbols")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol) -> bool:
        return symbol in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolAlphabet) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"SymbolAlphabet({list(self.symbols)!r})"

    def index(self, symbol: Symbol, position: int | None = None) -> int:
        """Order of a symbol, raising UnknownSymbolError for foreign symbols."""
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbolError(symbol, position) from None

    def indices(self, block: Sequence[Symbol]) -> list[int]:
        """Map a block to alphabet indices, reporting the offending position."""
        index = self._index
        out = []
        for pos, symbol in enumerate(block):
            try:
                out.append(index[symbol])
            except KeyError:
                raise UnknownSymbolError(symbol, pos) from None
        return out

    def block(self, indices: Iterable[int]) -> Block:
        """Inverse of indices: build a block from alphabet positions."""
        symbols = self.symbols
        return tuple(symbols[i] for i in indices)
