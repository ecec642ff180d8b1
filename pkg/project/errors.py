from typing import Optional


class MapfError(Exception):
    """
    Base class for every error raised by the planner.

    Args:
        message (str): Human readable description.
        index (Optional[int]): Index of the failing move (or cycle, for composite
            rotations) when the error refers to a position inside a sequence.
    """

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class NotStronglyConnected(MapfError):
    pass


class NotConnected(MapfError):
    pass


class NotStronglyBiconnected(MapfError):
    pass


class VertexNotInComponent(MapfError):
    pass


class NoSuchEdge(MapfError):
    pass


class TargetOccupied(MapfError):
    pass


class InvalidPlan(MapfError):
    pass


class InvalidConfiguration(MapfError):
    pass


class VertexNotHole(MapfError):
    pass


class Unreachable(MapfError):
    pass


class NoHoleOnCycle(MapfError):
    pass


class NoHoles(MapfError):
    pass


class TooFewHoles(MapfError):
    pass


class NotAttached(MapfError):
    pass


class WrongKind(MapfError):
    pass


class NotJoinedByArticulationPoint(MapfError):
    pass


class InfeasibleInstance(MapfError):
    pass


class InfeasibleSwap(MapfError):
    pass


class InvalidIntermediate(MapfError):
    """A constructed plan failed its own postcondition. Always a bug."""


class DegenerateParams(MapfError):
    pass


class TooManyAgents(MapfError):
    pass


class StateSpaceTooLarge(MapfError):
    pass


class FormatError(MapfError):
    """
    Malformed input file.

    Args:
        message (str): What is wrong with the line.
        line (Optional[int]): 1-based line number, None when the problem is global.
    """

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
