"""Exception types raised by the geometry and kinematics routines."""


class KinematicsError(Exception):
    """Base class for all package errors."""


class ParallelLines(KinematicsError):
    pass


class DegenerateTriangle(KinematicsError):
    pass


class NoConvergence(KinematicsError):
    pass


class NoBracket(KinematicsError):
    pass


class SingularJacobian(KinematicsError):
    pass


class DomainError(KinematicsError, ValueError):
    pass


class BadPartition(KinematicsError, ValueError):
    pass


class NotClosed(KinematicsError):
    pass


class SingularPoint(KinematicsError):
    """Raised when the tangent vector vanishes (cusp or stationary point)."""


class NoEnvelopePoint(KinematicsError):
    def __init__(self, t: float, message: str = ""):
        self.t = t
        super().__init__(message or f"no envelope point at t={t!r}")


class Unassemblable(KinematicsError):
    pass


class StretchedSingular(KinematicsError):
    """Dyad in a stretched or folded pose: derivative denominators vanish."""


class PoleAtInfinity(KinematicsError):
    pass


class Undefined(KinematicsError):
    pass


class FollowerSingular(KinematicsError):
    pass


class SchemaError(KinematicsError, ValueError):
    pass
