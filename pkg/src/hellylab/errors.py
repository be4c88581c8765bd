class HellyLabError(ValueError):
    """Base class for input and usage errors raised by hellylab."""


class InputError(HellyLabError):
    pass


class BudgetExceeded(HellyLabError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class PreconditionError(HellyLabError):
    """A documented precondition does not hold.

    ``certificate`` carries a concrete witness of the violation when one exists
    (for example a p-tuple that is not S-intersecting).
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
