"""Exception hierarchy shared across the package."""


class QisflowError(Exception):
    """Base class for all package errors."""


class ContractError(QisflowError):
    """An argument violates a documented precondition (shape, symmetry, range)."""


class RegularityError(QisflowError):
    """A state left the regular domain (eigenvalue/coordinate at or below the floor,
    rank deficiency)."""


class NumericError(QisflowError):
    """A numeric computation failed (non-finite values, eigensolver breakdown).

    ``last_state`` carries the last valid state when an integration blows up.
    """

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state
