"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live in incompatible ambient spaces."""


class PreconditionError(ValueError):
    """An operation was called outside its domain of definition."""


class CriterionError(PreconditionError):
    """A solvability criterion failed.

    ``failed`` lists the names of the violated conditions, in the order they
    were checked.
    """

    def __init__(self, failed, message=None):
        self.failed = tuple(failed)
        super().__init__(message or "criterion failed: " + "; ".join(self.failed))
