"""Exception hierarchy for the formula library.

Every error derives from ValueError so callers that only catch ValueError
(as the config loader and the CLI boundary do) keep working.
"""


class KronformError(ValueError):
    """Base class for all library errors."""


class InvalidArgument(KronformError):
    pass


class CoefficientOutOfRange(KronformError):
    pass


class InvalidBase(KronformError):
    pass


class PreconditionViolated(KronformError):
    """A hypothesis of a theorem or formula does not hold.

    Attributes:
        which (str): Short identifier of the failed hypothesis.
    """

    def __init__(self, which: str, message: str):
        super().__init__(f"{which}: {message}")
        self.which = which


class TheoremMismatch(KronformError):
    """Integer side and polynomial side disagree although every precondition held."""


class UnsupportedInitials(KronformError):
    pass


class UnsupportedCoefficients(KronformError):
    pass


class DegenerateModulus(KronformError):
    pass


class DivisionByZero(KronformError):
    """Zero modulus or denominator while evaluating a term.

    Attributes:
        path (str): Dotted node path inside the term, e.g. "root.modulus".
    """

    def __init__(self, path: str, message: str = "division by zero"):
        super().__init__(f"{message} at {path}")
        self.path = path


class ModulusNotPositive(KronformError):
    pass


class PerfectPower(KronformError):
    pass


class BudgetExceeded(KronformError):
    """A modulus would exceed the configured decimal digit budget."""

    def __init__(self, k: int, n: int, digits: int, budget: int):
        super().__init__(f"modulus for (k={k}, n={n}) has ~{digits} digits, budget is {budget}")
        self.k = k
        self.n = n
        self.digits = digits
        self.budget = budget


class TermSyntaxError(KronformError):
    pass
