class CapacityError(Exception):
    """Raised when a request exceeds an operation's enforced capacity envelope."""
