"""Exception hierarchy.

Two kinds of failure are kept apart: ``CrossmodError`` subclasses mean the
*input* is bad (not a homomorphism, axiom fails, too large), while
``InvariantViolation`` means a construction that is a theorem produced an
invalid object, i.e. the library itself is wrong.
"""


class CrossmodError(Exception):
    """Base class for input-level errors."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ArgumentError(CrossmodError, ValueError):
    pass


class SizeLimitError(CrossmodError):
    pass


class NotAHomomorphism(CrossmodError):
    pass


class NormalityError(CrossmodError):
    pass


class AxiomError(CrossmodError):
    """A structural axiom failed; ``axiom`` names it, ``witness`` is the first failing tuple."""

    def __init__(self, axiom, message, witness=None):
        super().__init__(f"{axiom}: {message}", witness)
        self.axiom = axiom


class NotSurjectiveError(CrossmodError):
    pass


class MembershipError(CrossmodError):
    pass


class WordLengthError(CrossmodError):
    pass


class ContainmentError(CrossmodError):
    pass


class HypothesisError(CrossmodError):
    """The input is valid but outside the hypotheses a construction needs."""


class ParseError(CrossmodError):
    def __init__(self, message, line=None):
        loc = f"line {line}: " if line is not None else ""
        super().__init__(loc + message)
        self.line = line


class InvariantViolation(RuntimeError):
    """A guaranteed property failed. Indicates a bug, never bad input."""
