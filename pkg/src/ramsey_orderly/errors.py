"""Exception types shared across the package."""


class OrderlyError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OrderlyError, ValueError):
    pass


class UnknownSymbol(ParseError):
    pass


class ArityMismatch(ParseError):
    pass


class MalformedVariable(ParseError):
    pass


class SignatureError(OrderlyError, ValueError):
    pass


class NotOrderly(OrderlyError, ValueError):
    pass


class NotAdmissible(OrderlyError, ValueError):
    pass


class IndexBeyondPrefix(OrderlyError, IndexError):
    """A finite prefix was asked for an entry it does not have."""

    def __init__(self, index, length):
        self.index = index
        self.length = length
        super().__init__(f"index {index} beyond prefix {length}")


class UniverseViolation(OrderlyError, ValueError):
    pass


class WrongSignature(OrderlyError, ValueError):
    pass


class AlphabetContainsVariable(OrderlyError, ValueError):
    pass


class CongruenceViolation(OrderlyError, ValueError):
    pass


class UniverseOverflow(OrderlyError, ValueError):
    pass


class OddLength(OrderlyError, ValueError):
    pass


class NotInjective(OrderlyError, ValueError):
    pass


class ColoringTypeError(OrderlyError, TypeError):
    """A coloring was queried on a value outside the universe type it supports."""
