"""Exception types raised across the package."""


class GraphError(ValueError):
    """Base class for all input and domain errors."""


class ParseError(GraphError):
    pass


class DuplicateEdge(ParseError):
    pass


class ZeroWeight(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class HasLoops(GraphError):
    pass


class NotSigned(GraphError):
    pass


class TooLarge(GraphError):
    pass


class Singular(GraphError):
    pass


class NotUnweightedSimple(GraphError):
    pass


class NotUniqueSachs(GraphError):
    pass


class NotPerfectMatching(GraphError):
    pass


class NotStellatedTree(GraphError):
    pass


class NotCorona(GraphError):
    pass


class WrongFamily(GraphError):
    pass


class NotSymmetric(GraphError):
    pass


class NoSplit(GraphError):
    pass


class NoConvergence(RuntimeError):
    pass


class Disagreement(RuntimeError):
    """Two independent computations of the same quantity differ.

    This is a correctness alarm, not an input problem, so it does not
    derive from GraphError.
    """
