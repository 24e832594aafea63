"""Exception hierarchy shared by every layer of the engine.

The CLI maps these onto exit codes, so each failure class stays distinct:
a strategy emitting an illegal move is not the same event as a search
running out of fuel.
"""


class BaireGamesError(Exception):
    """Base class for all engine errors."""


class DomainError(BaireGamesError):
    """An object was used with a space it does not belong to."""


class PreconditionError(BaireGamesError):
    """An operation was called outside its precondition."""


class UnsupportedError(BaireGamesError):
    """The space lacks the structure an operation needs."""


class FuelExhausted(BaireGamesError):
    """A bounded search gave up before finding what it looked for."""

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript


class InvariantViolation(BaireGamesError):
    """A certified invariant failed its check."""


class IllegalStrategyMove(BaireGamesError):
    """A strategy produced a move the referee rejects."""

    def __init__(self, side, round_no, move, reason="", transcript=None):
        self.side = side
        self.round = round_no
        self.move = move
        self.reason = reason
        self.transcript = transcript
        msg = f"illegal move by {side} in round {round_no}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class NotCertifiedAtDepth(BaireGamesError):
    """No shrinking evidence was found for neighborhood-base member k."""

    def __init__(self, k, message=""):
        self.k = k
        super().__init__(message or f"not certified at depth {k}")


class ConfigError(BaireGamesError):
    """Bad command-line or scenario configuration."""
