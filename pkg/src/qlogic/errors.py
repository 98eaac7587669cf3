"""Exception types shared across the package."""


class QLogicError(ValueError):
    pass


class DescriptorMismatch(QLogicError):
    pass


class NonPositiveInput(QLogicError):
    pass


class SpaceMismatch(QLogicError):
    pass


class NotHermitian(QLogicError):
    pass


class NotPositiveDefinite(QLogicError):
    pass


class NotAnAtom(QLogicError):
    pass


class NotOrthogonal(QLogicError):
    pass


class ValidationError(QLogicError):
    """Invariant failure; ``location`` names the offending element or line."""

    def __init__(self, message, location=None):
        self.location = location
        self.detail = message
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class MalformedTable(ValidationError):
    pass


class ParseError(QLogicError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line, self.column, self.source = line, column, source
        where = source or "<input>"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


class CapExceeded(QLogicError):
    pass


class ZeroVector(QLogicError):
    pass


class ToleranceViolation(QLogicError):
    pass


class FragmentNotDim2(QLogicError):
    pass


class BadWeights(QLogicError):
    pass


class NotAPartition(QLogicError):
    pass


class NotInvertible(QLogicError):
    pass


class IdentityFails(QLogicError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ExtensionInconsistent(QLogicError):
    pass


class NormsUnequal(QLogicError):
    pass


class HypothesesUnmet(QLogicError):
    pass


class UnknownSuite(QLogicError):
    pass


class OutsideGeneratedCone(QLogicError):
    pass
