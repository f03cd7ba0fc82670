"""Exception types shared by all modules."""


class InvolutionError(Exception):
    """Base class for all toolkit errors."""


class TooFewCoordinates(InvolutionError):
    """Fewer than two phase-space coordinates were supplied."""


class DuplicateAlpha(InvolutionError):
    """Two of the alpha constants coincide, so some alpha_i - alpha_j = 0."""


class DomainError(InvolutionError):
    """Evaluation left the admissible domain (e.g. fractional power of x <= 0)."""


class SingularConstraint(InvolutionError):
    """The constraint bracket J = {phi, Pi} is numerically zero."""


class NoConvergence(InvolutionError):
    """An implicit integrator step failed to reach its residual target."""


class ProjectionFailure(InvolutionError):
    """The constraint-multiplier solve of a constrained step did not converge."""


class DegeneratePoint(InvolutionError):
    """A point cannot be projected onto the constraint surface (e.g. x = 0)."""


class OutOfDomain(InvolutionError):
    """A closed-form solution was requested outside its interval of existence."""
