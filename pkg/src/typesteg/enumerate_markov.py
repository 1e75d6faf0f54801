"""Count, rank and unrank blocks inside their sliding-gram class.

For memory order k, the class of a block u is the set of words of the same
length with the same number of occurrences of every length-(k+1) subword,
the same first k symbols, and the same last k symbols. Members correspond
to re-orderings of a trail through the graph whose nodes are length-k
contexts and whose edges are the gram occurrences of u.

Counting and ranking walk that graph left to right from the pinned prefix.
At each position the candidate next symbols are tried in alphabet order,
and the number of ways to finish the word from a given state is computed
by memoized recursion over (remaining gram counts, current context), with
the base case "all counts used and context equals the pinned ending".
States repeat heavily along the walk, so the memo is what makes this
tractable; it lives for a single call and is discarded afterwards.

The memo can still grow combinatorially for large, gram-diverse blocks, so
enumeration refuses inputs beyond a supported scale instead of silently
consuming unbounded memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .alphabet import Block, Symbol, SymbolAlphabet
from .errors import ClassMismatchError, RankRangeError, ResourceLimitError

__all__ = [
    "TypeClassMarkov",
    "markov_class_of",
    "markov_class_count",
    "markov_rank",
    "markov_unrank",
    "MAX_DISTINCT_SYMBOLS",
    "MAX_ORDER",
    "MAX_BLOCK_LENGTH",
]

# Supported scale; enumeration beyond this raises ResourceLimitError.
MAX_DISTINCT_SYMBOLS = 16
MAX_ORDER = 3
MAX_BLOCK_LENGTH = 64
_MEMO_STATE_CAP = 2_000_000


@dataclass(frozen=True)
class TypeClassMarkov:
    """Sliding-gram class with pinned length-k prefix and suffix.

    Grams, prefix and suffix are stored as alphabet-index tuples; grams are
    sorted, which makes equal classes compare equal and gives the walker its
    canonical candidate order.
    """

    alphabet: SymbolAlphabet
    k: int
    grams: tuple[tuple[int, ...], ...]
    counts: tuple[int, ...]
    prefix: tuple[int, ...]
    suffix: tuple[int, ...]

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("order k must be nonnegative")
        if len(self.grams) != len(self.counts):
            raise ValueError("one count per gram required")
        if len(self.prefix) != self.k or len(self.suffix) != self.k:
            raise ValueError("prefix and suffix must have length k")
        if any(c <= 0 for c in self.counts):
            raise ValueError("gram counts must be positive")
        if tuple(sorted(self.grams)) != self.grams:
            raise ValueError("grams must be sorted")

    @property
    def n(self) -> int:
        return self.k + sum(self.counts)

    @property
    def gram_counts(self) -> dict[tuple, int]:
        """(k+1)-gram -> count view, in symbol (not index) form."""
        blk = self.alphabet.block
        return {blk(g): c for g, c in zip(self.grams, self.counts)}

    @property
    def prefix_symbols(self) -> Block:
        return self.alphabet.block(self.prefix)

    @property
    def suffix_symbols(self) -> Block:
        return self.alphabet.block(self.suffix)


def markov_class_of(
    block: Sequence[Symbol], alphabet: SymbolAlphabet, k: int
) -> TypeClassMarkov:
    """Overlapping (k+1)-gram counts plus the pinned k-prefix and k-suffix.

    With k = 0 the grams are single letters and the prefix and suffix are
    empty, so the class coincides with the letter-frequency class.
    """
    idxs = tuple(alphabet.indices(block))
    n = len(idxs)
    if k < 0:
        raise ValueError("order k must be nonnegative")
    if n <= 2 * k:
        raise ValueError(f"block length {n} must exceed 2k = {2 * k}")
    gram_counts: dict[tuple[int, ...], int] = {}
    for i in range(n - k):
        g = idxs[i : i + k + 1]
        gram_counts[g] = gram_counts.get(g, 0) + 1
    grams = tuple(sorted(gram_counts))
    return TypeClassMarkov(
        alphabet=alphabet,
        k=k,
        grams=grams,
        counts=tuple(gram_counts[g] for g in grams),
        prefix=idxs[:k],
        suffix=idxs[n - k :] if k else (),
    )


class _Walker:
    """Per-call enumeration state for one class; not shared across threads."""

    def __init__(self, tclass: TypeClassMarkov):
        used = {s for g in tclass.grams for s in g} | set(tclass.prefix)
        if len(used) > MAX_DISTINCT_SYMBOLS or tclass.k > MAX_ORDER or tclass.n > MAX_BLOCK_LENGTH:
            raise ResourceLimitError(
                f"class scale not supported: {len(used)} distinct symbols, "
                f"k={tclass.k}, n={tclass.n} "
                f"(limits: {MAX_DISTINCT_SYMBOLS}, {MAX_ORDER}, {MAX_BLOCK_LENGTH})"
            )
        self.tclass = tclass
        # context -> [(gram id, emitted symbol, next context)] in alphabet order
        self.moves: dict[tuple[int, ...], list[tuple[int, int, tuple[int, ...]]]] = {}
        for gid, g in enumerate(tclass.grams):
            self.moves.setdefault(g[: tclass.k], []).append((gid, g[-1], g[1:]))
        self.memo: dict[tuple[bytes, tuple[int, ...]], int] = {}

    def completions(self, counts: list[int], context: tuple[int, ...]) -> int:
        """Ways to finish the word from this state onto the pinned suffix."""
        key = (bytes(counts), context)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if len(self.memo) >= _MEMO_STATE_CAP:
            raise ResourceLimitError(
                f"enumeration state space exceeded {_MEMO_STATE_CAP} entries"
            )
        if any(counts):
            total = 0
            for gid, _sym, nctx in self.moves.get(context, ()):
                if counts[gid]:
                    counts[gid] -= 1
                    total += self.completions(counts, nctx)
                    counts[gid] += 1
        else:
            total = 1 if context == self.tclass.suffix else 0
        self.memo[key] = total
        return total

    def count(self) -> int:
        return self.completions(list(self.tclass.counts), self.tclass.prefix)

    def rank(self, idxs: Sequence[int]) -> int:
        tclass = self.tclass
        counts = list(tclass.counts)
        context = tclass.prefix
        value = 0
        for pos in range(tclass.k, tclass.n):
            target = idxs[pos]
            for gid, sym, nctx in self.moves[context]:
                if not counts[gid]:
                    continue
                counts[gid] -= 1
                if sym == target:
                    context = nctx
                    break
                value += self.completions(counts, nctx)
                counts[gid] += 1
            else:  # pragma: no cover - membership is validated by the caller
                raise ClassMismatchError("block leaves the class during ranking")
        return value

    def unrank(self, index: int) -> tuple[int, ...]:
        tclass = self.tclass
        counts = list(tclass.counts)
        context = tclass.prefix
        out = list(tclass.prefix)
        for _ in range(tclass.k, tclass.n):
            for gid, sym, nctx in self.moves[context]:
                if not counts[gid]:
                    continue
                counts[gid] -= 1
                ways = self.completions(counts, nctx)
                if index < ways:
                    out.append(sym)
                    context = nctx
                    break
                index -= ways
                counts[gid] += 1
            else:  # pragma: no cover - index is validated by the caller
                raise RankRangeError("index exceeds the number of class members")
        return tuple(out)


def markov_class_count(tclass: TypeClassMarkov) -> int:
    """Exact number of words with the class's gram counts, prefix and suffix."""
    return _Walker(tclass).count()


def markov_rank(block: Sequence[Symbol], tclass: TypeClassMarkov) -> int:
    """0-based index of a block in the lexicographic order of its class."""
    if markov_class_of(block, tclass.alphabet, tclass.k) != tclass:
        raise ClassMismatchError(
            f"block {tuple(block)!r} is not a member of the given class"
        )
    return _Walker(tclass).rank(tclass.alphabet.indices(block))


def markov_unrank(tclass: TypeClassMarkov, index: int) -> Block:
    """The unique class member whose rank equals index."""
    walker = _Walker(tclass)
    size = walker.count()
    if not 0 <= index < size:
        raise RankRangeError(f"index {index} outside [0, {size})")
    return tclass.alphabet.block(walker.unrank(index))
