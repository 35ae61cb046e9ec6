"""Exception types shared across the package.

Everything derives from QCodeError so callers can catch library failures
with one except clause.  Validation errors also subclass ValueError to
stay idiomatic.  Zero inversion raises the builtin ZeroDivisionError.
"""


class QCodeError(Exception):
    """Base class for all library errors."""


class NonPrimeError(QCodeError, ValueError):
    """The characteristic is not a prime number."""


class EvenPrimeError(QCodeError, ValueError):
    """The characteristic is 2; only odd characteristic is supported."""


class ReducibleModulusError(QCodeError, ValueError):
    """A user-supplied modulus polynomial failed the irreducibility test."""


class NonUnitError(QCodeError, ValueError):
    """A Galois automorphism index is not a unit modulo p."""


class ZeroLeadCoefficientError(QCodeError, ValueError):
    """The quadratic character-sum identity needs a nonzero leading coefficient."""


class AlphaInImageError(QCodeError, ValueError):
    """Shifted-image search requires the shift to lie outside the image."""


class DegenerateFormError(QCodeError, ValueError):
    """The quadratic form has rank zero; no prediction case applies."""


class PreconditionViolatedError(QCodeError, ValueError):
    """An operation's stated precondition does not hold for the arguments."""


class MissingParamError(QCodeError, ValueError):
    """A registry check was invoked without a parameter its signature needs."""


class NonIntegralPredictionError(QCodeError):
    """A closed-form count failed to resolve to an integer.

    This signals a transcription bug in a formula, never bad input data.
    """


class NegativeMultiplicityError(QCodeError):
    """A predicted multiplicity resolved to a negative integer."""


class EmptyDefiningSetError(QCodeError, ValueError):
    """The defining set is empty, so the code is undefined."""


class DimensionCollapseError(QCodeError):
    """Some nonzero codeword index produced the zero codeword.

    The construction proves this cannot happen, so an occurrence means an
    implementation bug or a genuine counterexample worth surfacing.  The
    witness index is carried on the exception.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
