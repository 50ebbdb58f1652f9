"""Exception hierarchy for sepcert."""


class SepcertError(Exception):
    """Base class for every error raised by this package."""


class NonHermitianInput(SepcertError, ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DimensionMismatch(SepcertError, ValueError):
    pass


class DimensionTooSmall(SepcertError, ValueError):
    pass


class InputNotPSD(SepcertError, ValueError):
    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class InvalidParameter(SepcertError, ValueError):
    pass


class NumericalDegeneracy(SepcertError, ArithmeticError):
    """A matrix that must be PSD (or orthonormal) by construction failed its check."""


class PreconditionViolated(SepcertError, ValueError):
    pass


class EmptyDecomposition(SepcertError, ValueError):
    pass


class NotSpcNorPpt(SepcertError, ValueError):
    pass


class NotWeakIrreducibleSPC(SepcertError, ValueError):
    pass


class NotWeakIrreduciblePPT(SepcertError, ValueError):
    pass


class TensorRankTooHigh(SepcertError, ValueError):
    pass


class ImageNotContained(SepcertError, ValueError):
    pass


class MultipleOfGamma(SepcertError, ValueError):
    pass


class ZeroB(SepcertError, ValueError):
    pass


class ParseError(SepcertError, ValueError):
    pass
