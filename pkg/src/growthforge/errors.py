"""Exception hierarchy.

Every error carries a short machine-parsable ``tag`` (the class name) that the
CLI prints verbatim.  ``DomainError`` subclasses are mathematical conditions on
valid input (CLI exit code 2); ``InputError`` subclasses are malformed input
(exit code 1).
"""


class GrowthForgeError(Exception):
    @property
    def tag(self):
        return type(self).__name__


class InputError(GrowthForgeError):
    pass


class DomainError(GrowthForgeError):
    pass


# exact-core
class DimensionMismatch(InputError):
    pass


class NotSquare(InputError):
    pass


class NotUnimodular(DomainError):
    pass


class DivisorZero(InputError):
    pass


class DivisorNotMonic(InputError):
    pass


# spectra
class NotMonic(InputError):
    pass


class ZeroConstantTerm(DomainError):
    pass


class DegenerateRecursion(DomainError):
    pass


class AllRootsOfUnity(DomainError):
    pass


class PowerBudgetExceeded(DomainError):
    def __init__(self, message, largest_tested):
        super().__init__(message)
        self.largest_tested = largest_tested


# groups
class KindMismatch(InputError):
    pass


class UnknownLabel(InputError):
    pass


class NotTransitive(DomainError):
    pass


class InvalidTable(InputError):
    pass


# growth
class BudgetExceeded(DomainError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EmptyReport(DomainError):
    pass


class RateInconsistency(DomainError):
    """Lower bound exceeded upper bound; indicates a bug, never expected."""


# witness
class NoCyclicSupport(DomainError):
    pass


class NotExponential(DomainError):
    pass


class DegenerateGeneratingSet(DomainError):
    pass


class RecursionExhausted(DomainError):
    pass


class WitnessRejected(DomainError):
    """A constructed pair failed the brute-force freeness check."""


# cli
class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(InputError):
    pass
