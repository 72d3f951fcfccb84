"""Exception types shared across the package."""


class GroupMismatchError(ValueError):
    """Operands live on different groups / phase spaces / windows."""


class PreconditionError(ValueError):
    """A documented precondition of an operation is violated."""
