class InvalidInput(ValueError):
    """Malformed sign sequence, tuple, or mismatched lengths."""


class BudgetExceeded(RuntimeError):
    """The canonical basis computation hit its recursion or correction limit."""

    def __init__(self, message: str, sigma=None, b=None):
        super().__init__(message)
        self.sigma = sigma
        self.b = b
