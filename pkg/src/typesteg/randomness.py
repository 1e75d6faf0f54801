"""Fair-bit sources and exact integer sampling.

All randomness enters the codec through a FairBitSource: a sequence of
independent equiprobable bits consumed most-significant-first. Production
use draws from the operating system CSPRNG; tests and reproducible runs
use a seeded or a scripted source.
"""

from __future__ import annotations

import random
import secrets
from typing import Iterable

from .errors import BitsExhaustedError

__all__ = [
    "FairBitSource",
    "SystemBitSource",
    "SeededBitSource",
    "ScriptedBitSource",
    "uniform_below",
]

_WORD_BITS = 256


class FairBitSource:
    """Stream of fair bits; subclasses supply the entropy words."""

    def __init__(self):
        self._buf = 0
        self._buf_len = 0
        self.bits_consumed = 0

    def _refill(self) -> tuple[int, int]:
        raise NotImplementedError

    def read_bit(self) -> int:
        return self.read_int(1)

    def read_int(self, nbits: int) -> int:
        """Consume nbits bits; the first bit read is the most significant."""
        if nbits < 0:
            raise ValueError("nbits must be nonnegative")
        out = 0
        need = nbits
        while need:
            if not self._buf_len:
                self._buf, self._buf_len = self._refill()
            take = min(need, self._buf_len)
            self._buf_len -= take
            out = (out << take) | (self._buf >> self._buf_len)
            self._buf &= (1 << self._buf_len) - 1
            need -= take
        self.bits_consumed += nbits
        return out


class SystemBitSource(FairBitSource):
    """Bits from the operating system's cryptographic generator."""

    def _refill(self):
        return secrets.randbits(_WORD_BITS), _WORD_BITS


class SeededBitSource(FairBitSource):
    """Deterministic bits from a 64-bit seed; identical across runs."""

    def __init__(self, seed: int):
        if not 0 <= seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        super().__init__()
        self._rng = random.Random(seed)

    def _refill(self):
        return self._rng.getrandbits(_WORD_BITS), _WORD_BITS


class ScriptedBitSource(FairBitSource):
    """Finite, explicit bit sequence, for tests and exhaustive oracles."""

    def __init__(self, bits: Iterable[int] | str):
        super().__init__()
        for b in bits:
            bit = int(b)
            if bit not in (0, 1):
                raise ValueError(f"invalid bit {b!r}")
            self._buf = (self._buf << 1) | bit
            self._buf_len += 1

    @property
    def remaining(self) -> int:
        return self._buf_len

    def _refill(self):
        raise BitsExhaustedError(
            f"scripted bit source exhausted after {self.bits_consumed} bits"
        )


def uniform_below(bound: int, source: FairBitSource) -> int:
    """Exactly uniform integer in [0, bound), by rejection on fixed-width draws.

    Each round reads ceil(log2 bound) bits and accepts values below bound,
    so a power-of-two bound never rejects and bound 1 reads nothing.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if bound == 1:
        return 0
    width = (bound - 1).bit_length()
    while True:
        value = source.read_int(width)
        if value < bound:
            return value
