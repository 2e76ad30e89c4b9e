"""Exception types raised by psopath."""


class PsoPathError(Exception):
    """Base class for all psopath errors."""


class InvalidInputError(PsoPathError, ValueError):
    """An argument violates a documented precondition (non-finite, negative, ...)."""


class InvalidStateError(PsoPathError, RuntimeError):
    """An object is not in a state the operation can work with."""


class PlacementError(PsoPathError, RuntimeError):
    """A particle could not be placed in free space during initialization."""

    def __init__(self, index: int, attempts: int):
        super().__init__(
            f"could not place particle {index} in free space after {attempts} attempts"
        )
        self.index = index
        self.attempts = attempts


class ScenarioError(InvalidInputError):
    """A scenario document failed validation.

    ``field`` is the dotted path of the offending entry when one applies.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class ScenarioSyntaxError(ScenarioError):
    """The scenario text is not well-formed."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column
