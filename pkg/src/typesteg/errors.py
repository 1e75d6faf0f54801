"""Exception types shared across the library."""


class StegoError(Exception):
    """Base class for all library-specific errors."""


class UnknownSymbolError(StegoError, ValueError):
    """A block contains a symbol that is not in its alphabet."""

    def __init__(self, symbol, position=None):
        self.symbol = symbol
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"symbol {symbol!r} not in alphabet{where}")


class ClassMismatchError(StegoError, ValueError):
    """A block was passed with a type class it does not belong to."""


class RankRangeError(StegoError, ValueError):
    """A rank index lies outside [0, class size)."""


class InexactDivisionError(StegoError, ArithmeticError):
    """An exact integer division left a remainder; signals a caller bug."""


class BitsExhaustedError(StegoError, RuntimeError):
    """A finite bit source ran dry."""


class FramingError(StegoError, ValueError):
    """A framed secret stream is truncated or malformed."""

    def __init__(self, message, missing_bits=None):
        self.missing_bits = missing_bits
        super().__init__(message)


class CoverCapacityError(StegoError, ValueError):
    """The cover is too short to carry the framed secret."""

    def __init__(self, shortfall_bits):
        self.shortfall_bits = shortfall_bits
        super().__init__(
            f"cover too short for framed secret: {shortfall_bits} more bits needed"
        )


class ResourceLimitError(StegoError, RuntimeError):
    """An enumeration was refused because it exceeds the supported scale."""
