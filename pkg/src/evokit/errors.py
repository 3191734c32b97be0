"""Exception hierarchy shared by every evokit module."""


class EvokitError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(EvokitError, ValueError):
    pass


class ShapeError(EvokitError, ValueError):
    pass


class ScalarParseError(EvokitError, ValueError):
    """Raised by the scalar parser; ``offset`` is the 0-based byte position."""

    def __init__(self, message, offset=None, text=None):
        self.offset = offset
        self.text = text
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class PreconditionError(EvokitError, ValueError):
    """An operation was called on inputs outside its contract."""


class NotNaturalBasisChange(PreconditionError):
    def __init__(self, message, verdict=None):
        self.verdict = verdict
        super().__init__(message)


class NotAutomorphism(PreconditionError):
    def __init__(self, message, verdict=None):
        self.verdict = verdict
        super().__init__(message)


class TheoremViolation(EvokitError, AssertionError):
    """A falsification oracle disagreed with a proved result.

    Either the implementation has a bug or the theorem is wrong; callers
    report these distinctly from ordinary input errors.
    """

    def __init__(self, tag, message, data=None):
        self.tag = tag
        self.data = data or {}
        super().__init__(f"[{tag}] {message}")
