"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class NCFError(Exception):
    """Base class for all errors raised by ncforms."""


class ValidationFailure(NCFError):
    """An input object violates one of the structural axioms.

    ``axiom`` is the short identifier of the violated axiom (``"T1"``,
    ``"P3"``, ``"F2"``, ...) and ``witness`` is a concrete piece of the
    input demonstrating the violation.
    """

    axiom = "?"

    def __init__(self, message: str, witness=None, cause: ValidationFailure | None = None):
        super().__init__(message)
        self.message = message
        self.witness = witness
        self.cause = cause

    def __str__(self):
        return f"{type(self).__name__}: {self.message}"


class T1Violation(ValidationFailure):
    axiom = "T1"


class T2Violation(ValidationFailure):
    axiom = "T2"


class P1Violation(ValidationFailure):
    axiom = "P1"


class P2Violation(ValidationFailure):
    axiom = "P2"


class P3Violation(ValidationFailure):
    axiom = "P3"


class F1Violation(ValidationFailure):
    axiom = "F1"


class F2Violation(ValidationFailure):
    axiom = "F2"


class F3Violation(ValidationFailure):
    axiom = "F3"


class FMViolation(ValidationFailure):
    """A candidate form morphism fails one of the conditions (a)-(e)."""

    axiom = "FM"

    def __init__(self, condition: str, message: str, witness=None):
        super().__init__(f"({condition}) {message}", witness)
        self.condition = condition


class PMViolation(ValidationFailure):
    """A candidate preform morphism fails PM1, PM2 or PM3."""

    axiom = "PM"

    def __init__(self, condition: str, message: str, witness=None):
        super().__init__(f"({condition}) {message}", witness)
        self.condition = condition


class UnknownNode(NCFError, KeyError):
    def __str__(self):
        return f"UnknownNode: {self.args[0]}"


class DegenerateSubform(NCFError):
    pass


class SourceTargetMismatch(NCFError):
    pass


class NotAnIsomorphism(NCFError):
    pass


class NotBijective(NCFError):
    pass


class NotChoiceSequence(NCFError):
    pass


class NotChoiceSet(NCFError):
    pass


class AbsentmindedInput(NCFError):
    """Raised when the range map collides on two distinct sequence nodes."""

    def __init__(self, first, second):
        super().__init__(
            f"R({first}) = R({second}) = {{{','.join(sorted(first.items))}}}"
        )
        self.pair = (first, second)


class NoSuchPath(NCFError):
    pass


class LengthOutOfRange(NCFError, ValueError):
    pass


class BoundTooSmall(NCFError, ValueError):
    pass


class LevelMismatch(NCFError, ValueError):
    pass


class ParseFailure(NCFError):
    """A document could not be turned into a validated object."""

    def __init__(self, message: str, line: int = 0, column: int = 0, cause=None):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column
        self.cause = cause


class NCFSyntaxError(ParseFailure):
    pass


class TheoremViolation(NCFError, AssertionError):
    """A property that must hold for every valid input did not hold.

    This always signals a bug in the implementation, never bad input.
    """


class RootMismatch(ValidationFailure):
    axiom = "root"
