"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: :class:`DomainError` and its subclasses
exit with 2, :class:`PrecisionError` with 3.
"""


class PadicFormsError(Exception):
    """Base class for all library errors."""


class DomainError(PadicFormsError, ValueError):
    """Input outside the mathematical domain of an operation."""


class NotInGroundFieldError(DomainError):
    """The requested quantity exists only in an extension of Q_p."""


class PoleError(DomainError):
    """Evaluation at a pole (of a Gamma factor or of an Euler factor)."""


class NoEigenvalueError(DomainError):
    pass


class UnsupportedMultiplicityError(DomainError):
    pass


class PrecisionError(PadicFormsError, ArithmeticError):
    """Not enough precision to justify the requested output."""


class CongruenceViolation(PadicFormsError, AssertionError):
    """An exact divisibility that theory guarantees has failed.

    Raising this always indicates a bug in the library.
    """
