"""Exception hierarchy shared by the solver, oracle and CLI."""

from __future__ import annotations


class GameError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(GameError, ValueError):
    """Malformed parameters, node counts or edge sets."""


class InvalidProfile(GameError, ValueError):
    """A strategy profile violates ``ea <= e1`` or ``e2 & (e1 - ea) == {}``."""


class InconsistentSituation(GameError):
    """An indicator triple outside the five feasible situations was observed."""


class ConstructionMismatch(GameError):
    """A topology construction disagrees with its closed-form edge count."""

    def __init__(self, message: str, *, expected: int, built: int, edges=None):
        super().__init__(message)
        self.expected = expected
        self.built = built
        self.edges = edges


class EnumerationCap(GameError):
    """An exhaustive enumeration was requested beyond its configured size."""


class BoundaryUnspecified(GameError):
    """Parameters sit on an equality boundary that the closed form leaves open.

    The solver still carries everything it evaluated so callers can report
    the tied cases.
    """

    def __init__(self, message: str, *, regime=None, thresholds=None,
                 candidates=(), tied=()):
        super().__init__(message)
        self.regime = regime
        self.thresholds = thresholds
        self.candidates = list(candidates)
        self.tied = list(tied)


class UnresolvedCase(BoundaryUnspecified):
    """A minimal network size could not be certified in closed form.

    Raised only when the exhaustive fallback search is out of range and the
    unresolved candidate could still be the designer's best choice.
    """
