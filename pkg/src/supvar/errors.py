"""Shared exception types with CLI exit-code semantics."""


class ValidationError(ValueError):
    """Malformed input or violated invariant (CLI exit code 2)."""


class BoundExceeded(RuntimeError):
    """A configured size or enumeration bound was exceeded (CLI exit code 3)."""
