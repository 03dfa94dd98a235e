"""Exception types raised by lyapstep.

Numerical failures inside time stepping are reported through status fields,
not exceptions. These types cover precondition violations and setup errors.
"""


class LyapstepError(Exception):
    """Base class for all lyapstep errors."""


class DimensionMismatchError(LyapstepError, ValueError):
    """A state or matrix does not match the dimension of its system."""


class NonFiniteStateError(LyapstepError, ArithmeticError):
    """A state, matrix or function value contains NaN or Inf."""


class InvalidParameterError(LyapstepError, ValueError):
    """A problem or solver parameter is outside its valid range."""


class UnsupportedProblemError(LyapstepError):
    """The requested operation is not available for this problem."""


class NonQuadraticLyapunovError(LyapstepError):
    """The closed-form 1-D step was requested for a non-quadratic V."""


class SingularStepError(LyapstepError, ArithmeticError):
    """A step required solving a singular linear relation."""


class DegenerateFitError(LyapstepError, ValueError):
    """An order fit cannot be computed from the given pairs."""


class GridMismatchError(LyapstepError, ValueError):
    """A reference solution is not defined on a trajectory's time grid."""


class ReferenceBlowupError(LyapstepError):
    """The reference trajectory diverged and cannot be used as ground truth."""
