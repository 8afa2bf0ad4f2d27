"""Exception hierarchy."""


class VerlindeError(Exception):
    """Base class for errors raised by this package."""


class InvalidTypeError(VerlindeError, ValueError):
    """Unknown or invalid series/rank combination."""


class LabelError(VerlindeError, ValueError):
    """A fusion label lies outside the level-k alcove."""

    def __init__(self, message, valid_labels=()):
        super().__init__(message)
        self.valid_labels = tuple(valid_labels)


class NotDominantError(VerlindeError, ValueError):
    pass


class SingularPointError(VerlindeError, ArithmeticError):
    """The Weyl denominator vanishes at the requested torus point."""


class NotACycleError(VerlindeError, ValueError):
    def __init__(self, residual):
        super().__init__(f"input chain is not a cycle; boundary is {residual!r}")
        self.residual = residual


class ResourceLimitError(VerlindeError, RuntimeError):
    pass


class InsufficientWindowError(ResourceLimitError):
    def __init__(self, message, suggested):
        super().__init__(message)
        self.suggested = suggested


class AntiInvarianceError(VerlindeError, ValueError):
    pass
