"""Exceptions raised by cohenalg. All of them are ValueErrors."""


class CohenAlgError(ValueError):
    """Base class; the CLI reports these and exits with status 2."""


class RingMismatchError(CohenAlgError):
    pass


class ShapeMismatchError(CohenAlgError):
    """Generator counts, block sizes or matrix shapes disagree."""


class UnsupportedRingError(CohenAlgError):
    pass


class NotAUnitError(CohenAlgError):
    pass


class IndexRangeError(CohenAlgError):
    pass


class GrammarError(CohenAlgError):
    """Text input could not be parsed; the message carries the offset."""

    def __init__(self, message: str, text: str = "", position: int = -1):
        if position >= 0:
            message = f"{message} (at offset {position} in {text!r})"
        super().__init__(message)
        self.text = text
        self.position = position


class PreconditionError(CohenAlgError):
    """An operation was called outside its domain (e.g. lift of a non-member)."""


class TruncationError(CohenAlgError):
    pass
