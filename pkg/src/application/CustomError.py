DOMAIN_ERROR_CODE = 1
PARSE_ERROR_CODE = 64


class CustomError(Exception):
    """
    Base exception of the toolkit.
    """

    def __init__(self, message, error_code=DOMAIN_ERROR_CODE) -> None:
        """
        Initialize the custom exception.

        Args:
            message (str): The error message.
            error_code (int, optional): Exit code reported by the command line front end. Defaults to 1.
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code

    def __str__(self) -> str:
        """
        Return a string representation of the exception.
        """
        if self.error_code:
            return f"{type(self).__name__}: {self.message} (Error Code: {self.error_code})"
        else:
            return f"{type(self).__name__}: {self.message}"


class OrderMismatch(CustomError):
    """Operands live in different cyclotomic fields."""


class DivisionByZero(CustomError):
    """Inverting the zero element."""


class NotASubfield(CustomError):
    """An element does not embed into (or descend to) the requested field."""


class UnsupportedField(CustomError):
    """The ambient field lacks a root of unity the construction needs."""


class NotInSigmaPM(CustomError):
    """A conjugate of a signed Pauli matrix left the set of signed Pauli matrices."""


class BadAxes(CustomError):
    """Axis indices do not satisfy the required Levi-Civita condition."""


class NotAMember(CustomError):
    """A matrix is not an element of the group."""


class InfiniteGroup(CustomError):
    """The operation is only defined for finite groups."""


class NotApplicable(CustomError):
    """An infiniteness certificate was requested for a finite group."""


class DegreeMismatch(CustomError):
    """Equality was requested between groups of different degree."""


class SpecMismatch(CustomError):
    """Containment was requested between groups with different axes."""


class NoPositiveRelation(CustomError):
    """A witness was requested although no containment is known."""


class NotReducible(CustomError):
    """A matrix entry cannot be reduced modulo 3."""


class ResultsStoreError(CustomError):
    """Persisting or reading a report table failed."""


class SpecParseError(CustomError):
    """A textual group spec or gate word could not be parsed."""

    def __init__(self, message, position: int = 0) -> None:
        super().__init__(f'{message} at position {position}', error_code=PARSE_ERROR_CODE)
        self.position = position


class UsageError(CustomError):
    """The command line arguments do not match any command."""

    def __init__(self, message) -> None:
        super().__init__(message, error_code=PARSE_ERROR_CODE)
