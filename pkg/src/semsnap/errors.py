"""Exception hierarchy shared across the package."""


class SemSnapError(Exception):
    """Base class for all package errors."""


# model
class UnknownChannel(SemSnapError):
    pass


class ClassMismatch(SemSnapError):
    pass


class ContradictoryConfirmation(SemSnapError):
    pass


# data engine
class ParseError(SemSnapError):
    pass


class CellTypeError(SemSnapError):
    pass


class SchemaError(SemSnapError):
    pass


class UnknownColumn(SemSnapError):
    pass


class NonScalarGroup(SemSnapError):
    pass


class EmptyData(SemSnapError):
    pass


class VariantMismatch(SemSnapError):
    pass


# relations
class UnknownView(SemSnapError):
    pass


# operations
class StalePlan(SemSnapError):
    pass


class MissingConfirmation(SemSnapError):
    pass


class ConfirmationDenied(SemSnapError):
    """Raised when an answer withdraws the plan; carries the registry-updated
    canvas so the confirmation itself is not lost."""

    def __init__(self, message, canvas=None):
        super().__init__(message)
        self.canvas = canvas


class PaletteExhausted(SemSnapError):
    pass


class NothingPending(SemSnapError):
    pass


class PendingOperation(SemSnapError):
    pass


class IncompatibleChartTypes(SemSnapError):
    pass


class UnsharedXAxis(SemSnapError):
    pass


class UnsupportedVariant(SemSnapError):
    pass


class NoWitness(SemSnapError):
    pass


class EmptyMapping(SemSnapError):
    pass


# spec-io
class DocumentSyntaxError(SemSnapError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(SemSnapError):
    """Carries every violated invariant, not just the first."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
