"""Exception types shared by all modules."""


class DomainError(ValueError):
    """A precondition of an operation was violated."""


class TableTooShort(DomainError):
    """An eigenvalue or coefficient table does not reach the required length."""


class ConvergenceError(ArithmeticError):
    """Two discretization levels of a numerical procedure disagree beyond tolerance."""


class GridTooCoarse(ConvergenceError):
    """Halving the quadrature step moved a moment by more than the allowed amount."""
