class GraphError(ValueError):
    """Malformed graph input (bad vertex, duplicate edge, self-loop)."""


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it relies on."""


class NumericalError(RuntimeError):
    """A numerical routine missed its accuracy contract."""
