"""Exception types raised by the library.

All of them derive from :class:`DiracTrapError`, itself a ``ValueError``, so
callers that only care about "bad input" can catch one thing.
"""


class DiracTrapError(ValueError):
    pass


class NotHermitian(DiracTrapError):
    pass


class MagneticFieldUnsupported(DiracTrapError):
    pass


class DegenerateInvariant(DiracTrapError):
    """g2 is at or below the floor, so the density-operator ansatz is undefined."""


class ZeroEigenvalue(DiracTrapError):
    pass


class ComplexEigenvalue(DiracTrapError):
    pass


class VanishingComponent(DiracTrapError):
    pass


class NotPure(DiracTrapError):
    pass


class InvalidPair(DiracTrapError):
    pass


class ZeroCoupling(DiracTrapError):
    pass
