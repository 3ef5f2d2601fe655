"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid user input. ``field`` names the offending input, when known."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class KClampedWarning(UserWarning):
    """Requested neighbor count exceeded the number of observations."""
