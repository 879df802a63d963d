"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller violated an operation's precondition."""


class UnsupportedError(InputError):
    """The request is valid in principle but outside the supported range."""


class CatalogError(KeyError):
    """Unknown observable name."""


class GridBudgetExceeded(RuntimeError):
    """A supremum scan ran out of its evaluation budget.

    Carries the best incumbent found so far in ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
