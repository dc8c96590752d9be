class GasingException(Exception):
    pass


# exact numbers


class DomainException(GasingException):
    pass


class DivisionByZeroException(GasingException):
    pass


class PrecisionException(GasingException):
    pass


# symbolic expressions


class EvaluationException(GasingException):
    pass


class DegenerateSeriesException(GasingException):
    pass


class CircularReasoningException(GasingException):
    pass


# figures


class ConstructionException(GasingException):
    pass


class LayoutException(GasingException):
    pass


# derivations and problems


class UndefinedValueException(GasingException):
    pass


class UnsupportedAngleException(GasingException):
    pass


class DegenerateProblemException(GasingException):
    pass


class InsufficientGivensException(GasingException):
    pass


class InconsistentDerivationException(GasingException):
    pass


class VerificationException(GasingException):
    def __init__(self, message: str, step: int | None = None, remainder: str = ""):
        super().__init__(message)
        self.step = step
        self.remainder = remainder


# expression input


class ExprSyntaxException(GasingException):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownFunctionException(GasingException):
    pass


# command line


class UsageException(GasingException):
    pass
