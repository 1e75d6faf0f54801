"""Secret-message framing and sequential bit streams.

The codec consumes an open-ended bit supply, while real secrets are finite
byte strings. A message is framed as a 32-bit big-endian payload bit
count, then the payload bytes most-significant-bit first, then random
padding drawn on demand, so the receiver can always find the end of the
message inside the recovered bit sequence.

The length prefix is a fixed, recognizable pattern. The codec's
distribution guarantees therefore assume the payload itself is already
indistinguishable from fair coin flips (e.g. ciphertext); framing
plaintext weakens that assumption and is the caller's responsibility.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import BitsExhaustedError, FramingError
from .randomness import FairBitSource

__all__ = [
    "LENGTH_PREFIX_BITS",
    "BitStream",
    "FramedSecret",
    "frame",
    "deframe",
    "bits_of_bytes",
    "bytes_of_bits",
    "int_to_bits",
    "bits_to_int",
]

LENGTH_PREFIX_BITS = 32


def int_to_bits(value: int, width: int) -> list[int]:
    """Fixed-width bit list of value, most significant bit first."""
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return [(value >> i) & 1 for i in range(width - 1, -1, -1)]


def bits_to_int(bits: Iterable[int]) -> int:
    """Integer from bits, first bit most significant."""
    value = 0
    for b in bits:
        value = (value << 1) | (b & 1)
    return value


def bits_of_bytes(data: bytes) -> list[int]:
    """Bit list of a byte string, most significant bit of each byte first."""
    return int_to_bits(int.from_bytes(data, "big"), 8 * len(data)) if data else []


def bytes_of_bits(bits: Sequence[int]) -> bytes:
    """Inverse of bits_of_bytes; the bit count must be a multiple of 8."""
    if len(bits) % 8:
        raise ValueError(f"bit count {len(bits)} is not a multiple of 8")
    return bits_to_int(bits).to_bytes(len(bits) // 8, "big")


class BitStream:
    """Sequential reader over finite bits, optionally followed by padding.

    Reads past the finite part draw from the padding source when one is
    attached and raise BitsExhaustedError otherwise.
    """

    def __init__(self, bits: Iterable[int] | str, padding: FairBitSource | None = None):
        value = 0
        length = 0
        for b in bits:
            value = (value << 1) | (int(b) & 1)
            length += 1
        self._value = value
        self._length = length
        self._padding = padding
        self.consumed = 0
        self.padding_consumed = 0

    @property
    def finite_remaining(self) -> int:
        return self._length

    def read_bit(self) -> int:
        return self.read_int(1)

    def read_int(self, nbits: int) -> int:
        """Consume nbits bits, first bit most significant."""
        if nbits < 0:
            raise ValueError("nbits must be nonnegative")
        take = min(nbits, self._length)
        self._length -= take
        out = self._value >> self._length
        self._value &= (1 << self._length) - 1
        pad = nbits - take
        if pad:
            if self._padding is None:
                self.consumed += take
                raise BitsExhaustedError(
                    f"bit stream exhausted after {self.consumed} bits"
                )
            out = (out << pad) | self._padding.read_int(pad)
            self.padding_consumed += pad
        self.consumed += nbits
        return out


class FramedSecret(BitStream):
    """A framed message: length prefix, payload bits, then random padding."""

    def __init__(self, message: bytes, padding: FairBitSource):
        payload_bits = 8 * len(message)
        if payload_bits >= 1 << LENGTH_PREFIX_BITS:
            raise ValueError(
                f"message of {len(message)} bytes exceeds the framable size"
            )
        # prefix value happens to equal the shift width: both are the bit count
        framed = (payload_bits << payload_bits) | int.from_bytes(message, "big")
        bits = int_to_bits(framed, LENGTH_PREFIX_BITS + payload_bits)
        super().__init__(bits, padding)
        self.message = bytes(message)
        self.payload_bits = LENGTH_PREFIX_BITS + payload_bits

    @property
    def delivered_bits(self) -> int:
        """Prefix and payload bits handed to the codec so far."""
        return min(self.consumed, self.payload_bits)

    @property
    def shortfall(self) -> int:
        """Prefix and payload bits not yet delivered."""
        return self.payload_bits - self.delivered_bits


def frame(message: bytes, rand: FairBitSource) -> FramedSecret:
    """Frame a message for embedding; padding comes lazily from rand."""
    if 8 * len(message) >= 1 << LENGTH_PREFIX_BITS:
        raise ValueError(f"message of {len(message)} bytes exceeds the framable size")
    return FramedSecret(bytes(message), rand)


def deframe(bits: Sequence[int] | str) -> bytes:
    """Recover the framed message, ignoring any trailing padding bits."""
    bits = [int(b) & 1 for b in bits]
    if len(bits) < LENGTH_PREFIX_BITS:
        raise FramingError(
            "bit stream too short for the length prefix",
            missing_bits=LENGTH_PREFIX_BITS - len(bits),
        )
    payload_bits = bits_to_int(bits[:LENGTH_PREFIX_BITS])
    if payload_bits % 8:
        raise FramingError(f"payload bit count {payload_bits} is not byte aligned")
    available = len(bits) - LENGTH_PREFIX_BITS
    if available < payload_bits:
        raise FramingError(
            f"payload truncated: {payload_bits - available} bits missing",
            missing_bits=payload_bits - available,
        )
    payload = bits[LENGTH_PREFIX_BITS : LENGTH_PREFIX_BITS + payload_bits]
    return bytes_of_bits(payload)
