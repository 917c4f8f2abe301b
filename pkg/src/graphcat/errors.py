"""Exception types and validation reports shared across the package."""

from dataclasses import dataclass, field


class GraphcatError(Exception):
    """Base class for all errors raised by this package."""


class ProfileMismatch(GraphcatError):
    """Boundary arities or profiles do not line up."""


class ColorMismatch(GraphcatError):
    """Edge colors disagree where they are required to match."""


class SizeLimit(GraphcatError):
    """An enumeration or search exceeded its configured size bound."""


class HeightError(GraphcatError):
    """A level graph does not have the height required by an operation."""


class ConnectivityError(GraphcatError):
    """An operation requires a connected input."""


class OpennessViolation(GraphcatError):
    """A subgraph is missing edges incident to one of its vertices."""


class NotSegal(GraphcatError):
    """A presheaf fails the Segal condition where it is required."""


@dataclass(frozen=True)
class Violation:
    """A named invariant failure, reported rather than raised.

    ``kind`` is a stable identifier such as ``"MonoViolation"`` or
    ``"CycleViolation"``; ``where`` locates the offending item.
    """

    kind: str
    message: str
    where: tuple = field(default=())

    def __str__(self):
        loc = f" at {self.where}" if self.where else ""
        return f"{self.kind}{loc}: {self.message}"
