"""Exception types raised by warpvol."""


class WarpVolError(Exception):
    """Base class for all library errors."""


class DomainError(WarpVolError, ValueError):
    """An argument lies outside the domain of the operation."""


class ProfileValidationError(WarpVolError, ValueError):
    """A sampled warping profile violates its structural invariants."""


class PoleExclusionError(DomainError):
    """Curvature requested inside the excluded window around a pole."""


class DegenerateProfileError(WarpVolError):
    """The profile has no interior maximum (no equator)."""


class PreconditionError(WarpVolError):
    """A documented precondition of an operation does not hold."""


class ThresholdViolationError(WarpVolError):
    """The scalar-branch bracket at s = 1 does not exceed eps, so h(m) is undefined."""


class ConsistencyError(WarpVolError):
    """Two routes that must agree (closed form vs quadrature, root vs sweep) disagree."""


class ContradictionError(WarpVolError):
    """A result that the theory forbids (e.g. G(n, 1) <= 0)."""
