"""Exception types shared across the package."""


class TwistedCodesError(Exception):
    """Base class for all package errors."""


class NonPrimeCharacteristic(TwistedCodesError, ValueError):
    pass


class ReducibleModulus(TwistedCodesError, ValueError):
    pass


class FieldMismatch(TwistedCodesError, TypeError):
    pass


class DivisionByZero(TwistedCodesError, ZeroDivisionError):
    pass


class NotAGroup(TwistedCodesError, ValueError):
    pass


class NotNormal(TwistedCodesError, ValueError):
    pass


class ZeroLambdaEntry(TwistedCodesError, ValueError):
    pass


class BudgetExceeded(TwistedCodesError, RuntimeError):
    """An exhaustive search would exceed its configured budget."""


class SystemMismatch(TwistedCodesError, ValueError):
    pass


class ZeroCode(TwistedCodesError, ValueError):
    pass


class NotKLinear(TwistedCodesError, ValueError):
    pass


class NotOneDimensional(TwistedCodesError, ValueError):
    pass


class DecompositionFailed(TwistedCodesError, RuntimeError):
    pass


class ScalarExtractionFailed(TwistedCodesError, RuntimeError):
    pass


class NotScalarInvariant(TwistedCodesError, ValueError):
    pass


class PlanInconsistent(TwistedCodesError, ValueError):
    pass


class TransportObstructed(TwistedCodesError, RuntimeError):
    """The cocycle induced on G/N is not a coboundary, so no untwisted image exists."""


class ReductionStalled(TwistedCodesError, RuntimeError):
    pass


class InvalidCrossedSystem(TwistedCodesError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"crossed system violates {len(report.violations)} identities, first: {report.violations[:3]}")
