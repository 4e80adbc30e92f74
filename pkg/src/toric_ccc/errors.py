"""Exception hierarchy shared by every module."""


class ToricError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class NonSimplicialError(ToricError):
    pass


class NotCompleteError(ToricError):
    pass


class IncompatiblePolytopeError(ToricError):
    pass


class HypothesisError(ToricError):
    """A morphism of stacky fans fails a hypothesis needed for pullback."""


class InvalidComplexError(ToricError):
    pass


class NotCompactError(ToricError):
    """Total Ext would be infinite-dimensional."""


class NotMonomialError(ToricError):
    pass


class DimensionError(ToricError):
    pass


class FanFileError(ToricError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidFanError(ToricError):
    """Input fan fails validation."""
