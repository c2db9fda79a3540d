"""Exception types shared across the package."""


class FieldError(ValueError):
    """Base class for every error raised by bilinperm."""


class InvalidParameter(FieldError):
    """A construction hypothesis is violated.

    ``hypothesis`` names the violated condition so reports can quote it.
    """

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis or message


class InvalidSubfield(FieldError):
    pass


class InvalidSplit(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class NoInverse(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass
