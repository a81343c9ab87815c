"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """A requested computation would exceed a configured size budget.

    ``partial`` carries whatever was completed before the budget tripped
    (for ``evolve`` this is the list of snapshots built so far).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class SeedParseError(ValueError):
    """Malformed seed specification or edge-list file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
