"""Exception types shared across the package."""


class KnotVerifyError(Exception):
    """Base class for all library errors."""


class InvalidGeometryError(KnotVerifyError):
    """Degenerate or malformed geometric input (zero-length edge, bad axis, ...)."""


class DomainError(KnotVerifyError):
    """Parameter outside its documented domain."""


class ObjectiveEvaluationError(KnotVerifyError):
    """The minimization objective returned a non-finite value."""

    def __init__(self, point, value):
        self.point = point
        self.value = value
        super().__init__(f"objective returned non-finite value {value!r} at {point!r}")


class SingularFrameError(KnotVerifyError):
    """A crossing's strands are not separated in z; the knot type is undefined
    at the working resolution."""


class TangentialCrossingError(KnotVerifyError):
    """Projected strands meet without transversal tangents; no crossing sign exists."""


class DegenerateDiagramError(KnotVerifyError):
    """Diagram data violates its structural invariants (or yields a zero determinant)."""
