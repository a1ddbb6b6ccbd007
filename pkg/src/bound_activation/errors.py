"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """A parameter or operand lies outside its declared domain."""


class DegenerateStateError(ValueError):
    """A renormalisation would divide by a (numerically) vanishing trace."""


class PostSelectionError(RuntimeError):
    """The post-selected branch of a protocol round has zero probability."""


class NonConvergenceError(RuntimeError):
    """An iteration cannot reach (or did not reach) its target.

    ``rows`` holds whatever was computed before giving up, if anything.
    """

    def __init__(self, message, rows=None):
        super().__init__(message)
        self.rows = rows


class InvariantViolation(RuntimeError):
    """Two independent computations of the same quantity disagree."""
