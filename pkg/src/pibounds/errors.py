"""Semantic exception hierarchy shared by all pibounds modules.

Every public function raises one of these instead of a bare ValueError so
callers can distinguish contract violations (bad inputs) from numerical
failures (a solver that did not reach its certificate).
"""


class PiboundsError(Exception):
    """Base class for all errors raised by this package."""


class NegativeMass(PiboundsError):
    """An input probability entry is negative beyond the stated tolerance."""


class NotNormalized(PiboundsError):
    """Probability entries do not sum to 1 within the stated tolerance."""


class EmptyMatrix(PiboundsError):
    """The input grid is empty or not a rectangular 2-D numeric array."""


class ShapeMismatch(PiboundsError):
    """Operand dimensions are incompatible."""


class NotSurjective(PiboundsError):
    """A class assignment does not cover every target class."""


class ZeroMarginal(PiboundsError):
    """A marginal entry is zero where strict positivity is required."""


class KOutOfRange(PiboundsError):
    """Requested component count k is outside 1..d."""


class NoConvergence(PiboundsError):
    """An iterative method hit its iteration cap with residual above tol."""


class MOutOfRange(PiboundsError):
    """Requested class count M is outside 1..m."""


class NegativeTheta(PiboundsError):
    """An information budget theta is negative."""


class TooLarge(PiboundsError):
    """Brute-force enumeration would exceed the configured cap."""


class InfeasibleBox(PiboundsError):
    """Box constraints of the internal linear program cannot meet the budget.

    Cannot occur for a valid probability vector; signals input corruption.
    """


class LengthMismatch(PiboundsError):
    """Two probability vectors that must match in length do not."""


class NotAMajorizationPair(PiboundsError):
    """A pair passed to a Schur-concavity probe fails the majorization check."""


class NotCanonical(PiboundsError):
    """A probability vector that must be sorted non-increasing is not."""


class SolverFailure(PiboundsError):
    """The convex solver stopped before reaching its duality-gap target.

    Carries the best certified lower bound reached so far in
    ``certified_value`` (None if no stage completed).
    """

    def __init__(self, message, certified_value=None):
        super().__init__(message)
        self.certified_value = certified_value


class DegenerateSupportWarning(UserWarning):
    """A distribution with a single support point was passed where an
    estimation problem is vacuous; the bound returned is 0 by convention."""


class InvalidInertia(PiboundsError):
    """An inertia vector has entries outside [0,1] or is not non-increasing."""
