class ParseError(ValueError):
    """Malformed braid-word input (message carries the token position)."""


class InputError(ValueError):
    """Input violates a documented precondition (wrong closure, signs, ...)."""


class VerificationError(RuntimeError):
    """An internal exactness contract failed (division remainder, route
    disagreement, stabilization failure).  Always a bug, never user error."""
