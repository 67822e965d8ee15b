"""Exception hierarchy; the CLI maps each class to an exit code."""


class TwlError(Exception):
    exit_code = 1


class VerificationError(TwlError):
    """A checked bound or invariant does not hold."""

    exit_code = 1


class InputError(TwlError, ValueError):
    """Malformed input or violated precondition."""

    exit_code = 2


class InvalidSequenceError(InputError):
    """A contraction sequence is structurally broken (dead vertex, wrong length)."""


class ResourceLimitError(TwlError):
    exit_code = 3
