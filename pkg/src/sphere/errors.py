"""Exception types shared across the package."""


class SphereError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(SphereError, ArithmeticError):
    pass


class RankMismatch(SphereError, ValueError):
    pass


class UnsupportedRing(SphereError, ValueError):
    pass


class InfeasibleStrategy(SphereError, ValueError):
    pass


class DependentGenerators(SphereError, ValueError):
    pass


class EmptySphere(SphereError, ValueError):
    pass


class ArityMismatch(SphereError, ValueError):
    pass


class NotInverseLoop(SphereError, ValueError):
    pass


class NonCentralParameter(SphereError, ValueError):
    pass


class InvolutionNotAntiAutomorphism(SphereError, ValueError):
    pass


class InvalidStageParameter(SphereError, ValueError):
    pass


class TableTooLarge(SphereError, ValueError):
    pass
