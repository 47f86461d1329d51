"""Exception types raised across the package."""


class DualAlgebraError(ValueError):
    """Base class for invalid inputs to dual-algebra routines."""


class RingMismatch(DualAlgebraError):
    pass


class InfinitesimalNotInvertible(DualAlgebraError, ZeroDivisionError):
    """Raised when inverting a dual element whose standard part is zero."""


class NonUnitRotation(DualAlgebraError):
    pass


class NonImaginaryTranslation(DualAlgebraError):
    pass


class NotHermitian(DualAlgebraError):
    pass


class InconsistentSystem(DualAlgebraError):
    """The right-hand side of a singular correction system has a kernel component."""


class DisconnectedGraph(DualAlgebraError):
    pass


class NonUnitGain(DualAlgebraError):
    pass


class ClusterPairingError(ArithmeticError):
    """Eigenvalues of a complex adjoint matrix failed to pair up."""
