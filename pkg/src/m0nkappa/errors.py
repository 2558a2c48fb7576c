class InputError(ValueError):
    """Raised when arguments fall outside an operation's domain."""
