"""Exception types shared across the package.

Everything derives from CurveSpectrumError so callers (and the CLI) can
distinguish precondition violations from programming errors.
"""


class CurveSpectrumError(ValueError):
    """Base class for all precondition / domain errors raised here."""


class RangeTooLargeError(CurveSpectrumError):
    """Sieve range exceeds the memory bound and segmentation is disabled."""


class SingularCurveError(CurveSpectrumError):
    """Weierstrass coefficients with vanishing discriminant."""


class BadReductionError(CurveSpectrumError):
    """Point counting requested at a prime dividing the discriminant."""


class SmallPrimeError(CurveSpectrumError):
    """Point counting requested at p <= 3 without the explicit opt-in."""


class InvalidDiscriminantError(CurveSpectrumError):
    """d >= 0 or d incongruent to 0, 1 mod 4."""


class NonDivisibleError(CurveSpectrumError):
    """f^2 does not divide the quadratic polynomial value."""


class PrimeNotDividingError(CurveSpectrumError):
    """Local count requested at a prime not dividing the modulus."""


class ParityError(CurveSpectrumError):
    """Closed-form local counts require odd N and odd f; refuse otherwise."""
