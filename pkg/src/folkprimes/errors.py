"""Exception types shared across the package."""

INT_MAX = 2**63 - 1


class FolkError(Exception):
    """Base class for every error raised deliberately by folkprimes."""


class UsageError(FolkError, ValueError):
    """Bad arguments: out-of-range counts, duplicate elements, unknown schemes."""


class DomainError(FolkError, ValueError):
    """An arithmetic function was evaluated outside its domain (e.g. nu at 0)."""


class IntOverflowError(FolkError, OverflowError):
    """A result left the signed 64-bit range."""


class ShortfallError(FolkError):
    """Thinning left too few elements to run the extraction step."""

    def __init__(self, required, available):
        self.required = required
        self.available = available
        super().__init__(
            f"thinned set has {available} elements, extraction needs more than "
            f"{required - 1} (at least {required})"
        )


class InvariantError(FolkError, AssertionError):
    """An internal consistency check failed; indicates a bug or a non-witness input."""


def checked(value):
    if value > INT_MAX or value < -INT_MAX - 1:
        raise IntOverflowError(f"a {value.bit_length()}-bit value exceeds the 64-bit signed range")
    return value
