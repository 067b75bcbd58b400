class NonConvergenceError(RuntimeError):
    """A numerical procedure stopped before reaching its requested accuracy."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class OracleMismatchError(AssertionError):
    """Two independent routes to the same quantity disagree beyond tolerance."""
