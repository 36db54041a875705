"""Exception types raised across lforge."""


class LforgeError(Exception):
    """Base class for all lforge errors."""


class NonExactDivision(LforgeError, ArithmeticError):
    """A Laurent polynomial division left a remainder."""


class BoundExceeded(LforgeError, ValueError):
    """A highest weight is larger than the configured oracle bound."""


class PoleAtNonPositiveInteger(LforgeError, ValueError):
    """A Gamma factor was evaluated at (or numerically on top of) a pole."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ContourViolation(LforgeError, ValueError):
    """No admissible vertical contour exists, or a pole sits on the contour."""


class NonConvergence(LforgeError, RuntimeError):
    """Step halving did not reduce the quadrature error estimate."""


class BalanceViolation(LforgeError, ValueError):
    """Parameters for the Stade transformation are not balanced."""


class CentralCharacterViolation(LforgeError, ValueError):
    """The archimedean parameters do not have trivial combined central character."""
