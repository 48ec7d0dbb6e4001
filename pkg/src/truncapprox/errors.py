"""Exception types raised by the pipeline and the graph utilities."""


class ApproxError(ValueError):
    """Base class for all domain errors in this package."""


class NonzeroConstantTerm(ApproxError):
    pass


class ZeroConstantTerm(ApproxError):
    pass


class InsufficientCoefficients(ApproxError):
    def __init__(self, m_needed: int, have: int):
        self.m_needed = m_needed
        self.have = have
        super().__init__(
            f"need coefficients a_0..a_{m_needed}, only a_0..a_{have} supplied"
        )


class DeltaOutOfRange(ApproxError):
    pass


class ContainmentCheckFailed(ApproxError):
    pass


class ConstantPolynomial(ApproxError):
    pass


class NotClawFree(ApproxError):
    pass


class KTooLarge(ApproxError):
    pass


class TooLargeForOracle(ApproxError):
    pass


class ParseError(ApproxError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
