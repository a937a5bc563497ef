"""Exception types shared across the package."""


class DartjacError(Exception):
    """Base class for all library errors."""


class InvalidGraph(DartjacError):
    """The dart/vertex/involution data does not describe a graph."""


class Disconnected(DartjacError):
    """Operation requires a connected graph."""


class SemiedgePresent(DartjacError):
    """Operation is undefined on graphs with semiedges."""


class LoopOrSemiedgePresent(DartjacError):
    """Operation requires a graph without loops and semiedges."""


class ScaleExceeded(DartjacError):
    """Input is beyond the configured desk-scale bounds."""


class NotASpanningTree(DartjacError):
    """The given edge set is not a spanning tree of the graph."""


class NotSquare(DartjacError):
    """Square matrix required."""


class NotAnAutomorphism(DartjacError):
    """The dart permutation is not an automorphism of the graph."""


class NotSemiregular(DartjacError):
    """The group action has a nontrivial element with a fixed dart or vertex."""


class InvalidVoltage(DartjacError):
    """Voltage assignment violates the inverse condition."""


class NotACovering(DartjacError):
    """The dart map is not a covering projection."""


class NotXiInvariant(DartjacError):
    """The flow is not constant on the orbits of the acting group."""


class IdentityInConnection(DartjacError):
    """Cayley connection multisets must not contain the identity."""


class NotInverseClosed(DartjacError):
    """Cayley connection multisets must be closed under inversion."""


class HypothesisUnmet(DartjacError):
    """A verification routine's hypotheses fail on the given instance."""


class FormatError(DartjacError):
    """A JSON document violates a file-format contract.

    `path` points at the offending location, e.g. ``$.lambda[3]``.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message
