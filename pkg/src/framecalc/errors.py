"""Exception hierarchy.

Every error carries an exit code so the CLI can map failures onto its
stable contract: 2 parse, 3 validation, 4 budget, 5 property failure.
"""

from __future__ import annotations


class FrameCalcError(Exception):
    exit_code = 1


class ParseError(FrameCalcError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ValidationError(FrameCalcError):
    """Input does not satisfy the structure it claims to be."""

    exit_code = 3

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class CycleDetected(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class NotALattice(ValidationError):
    pass


class NotDistributive(ValidationError):
    pass


class NotAHom(ValidationError):
    pass


class NotANucleus(ValidationError):
    pass


class NotABiframe(ValidationError):
    pass


class NotASpace(ValidationError):
    pass


class NotT0(ValidationError):
    pass


class NotInjective(ValidationError):
    pass


class FrameMismatch(ValidationError):
    pass


class HomMismatch(ValidationError):
    pass


class SpaceMismatch(ValidationError):
    pass


class UnknownName(ValidationError):
    pass


class SizeBudgetExceeded(FrameCalcError):
    exit_code = 4

    def __init__(self, predicted: int, budget: int, partial=None):
        self.predicted = predicted
        self.budget = budget
        self.partial = partial
        super().__init__(f"predicted size {predicted} exceeds budget {budget}")


class InvariantViolation(FrameCalcError):
    """A result that holds for every finite frame failed to hold."""

    exit_code = 5

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NoLeastWitness(InvariantViolation):
    pass
