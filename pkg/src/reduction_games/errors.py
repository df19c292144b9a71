"""Exception types raised by the engine."""


class GameError(Exception):
    """Base class for engine errors."""


class RuleViolation(GameError):
    """A run left the rule set of the game."""

    def __init__(self, reason: str, witness=None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


class DomainViolation(GameError):
    """Player I's real lies outside the game's domain."""


class NoActivationWithinBound(GameError):
    def __init__(self, bound: int):
        super().__init__(f"no control row activated below row {bound}")
        self.bound = bound


class NoWitnessWithinBound(GameError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"no code at row {n} contains the input (searched m < {bound})")
        self.n = n
        self.bound = bound


class LimitUndetermined(GameError):
    pass


class NotDelayable(GameError):
    pass


class UnsupportedGame(GameError):
    pass


class UnsupportedRegionShape(GameError):
    pass


class BudgetViolation(GameError):
    pass


class NotFiniteState(GameError):
    """Exact evaluation needs a run that closes into a lasso."""


class WitnessFailure(GameError):
    def __init__(self, message: str, sample=None):
        super().__init__(message)
        self.sample = sample


class IncoherentSpec(GameError):
    def __init__(self, message: str, sample=None):
        super().__init__(message)
        self.sample = sample


class BadAnchor(GameError):
    pass


class InvalidParameter(GameError, ValueError):
    pass


__all__ = [
    "GameError",
    "RuleViolation",
    "DomainViolation",
    "NoActivationWithinBound",
    "NoWitnessWithinBound",
    "LimitUndetermined",
    "NotDelayable",
    "UnsupportedGame",
    "UnsupportedRegionShape",
    "BudgetViolation",
    "NotFiniteState",
    "WitnessFailure",
    "IncoherentSpec",
    "BadAnchor",
    "InvalidParameter",
]
