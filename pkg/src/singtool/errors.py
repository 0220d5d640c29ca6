"""Exception types raised across the package."""


class SingtoolError(Exception):
    """Base class for all package errors."""


class NumericFailure(SingtoolError):
    """An internal numeric routine (eigensolve, root polish) did not converge."""


class DomainError(SingtoolError, ValueError):
    pass


class SingularPoint(SingtoolError):
    """W_uuu vanishes at the point: gradient catastrophe, derivatives blow up."""


class DegenerateLambda(SingtoolError):
    pass


class DegenerateTangent(SingtoolError):
    """The Whitney tangent vector of the singular curve vanishes."""


class NotOnCurve(SingtoolError):
    pass


class UnresolvedOrder(SingtoolError):
    """Every derivative of the ladder up to kmax is below tolerance."""


class DegenerateDirection(SingtoolError):
    pass


class DegenerateTarget(SingtoolError):
    pass


class OffSurface(SingtoolError):
    pass


class NoConvergence(SingtoolError):
    pass


class SingularNewtonJacobian(SingtoolError):
    pass


class DegenerateCharacteristic(SingtoolError):
    pass


class TransitionLine(SingtoolError):
    """S == R at an evaluated point: the system is not strictly hyperbolic there."""


class PathInconsistent(SingtoolError):
    pass


class Degenerate(SingtoolError):
    pass


class NotWeaklyNonlinear(SingtoolError):
    pass


class ConfigError(SingtoolError, ValueError):
    """Invalid job configuration; ``field`` names the offending key."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
