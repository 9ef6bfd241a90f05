class InternalConsistencyError(Exception):
    """Raised when two results that must agree do not, e.g. two equivalent
    criteria giving different verdicts on the same input. Always a bug."""
    pass


def ensure(condition, msg, *args):
    """Raise InternalConsistencyError with msg.format(*args) unless condition holds"""
    if not condition:
        raise InternalConsistencyError(msg.format(*args))
