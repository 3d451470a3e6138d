"""Exception types shared across the package."""


class ArcrevError(Exception):
    """Base class for all library errors."""


class GraphError(ArcrevError, ValueError):
    """Invalid parent graph or multiplicity list."""


class OrientationError(ArcrevError, ValueError):
    """Arc set that is not an orientation of the multiplication."""


class ArcNotPresent(ArcrevError, ValueError):
    """A cycle step refers to an arc the current orientation does not have."""


class NotBalanced(ArcrevError, ValueError):
    """Difference digraph lacks the degree condition a decomposition needs."""


class RefinementError(ArcrevError, ValueError):
    """A refinement precondition does not hold for the given cycle."""


class SearchExhausted(ArcrevError, RuntimeError):
    """Bounded certificate search hit its depth cap without a script.

    This never means the instance is inequivalent, only that the cap was reached.
    """


class ParseError(ArcrevError, ValueError):
    def __init__(self, source, lineno, message):
        self.source = source
        self.lineno = lineno
        super().__init__(f"{source}:{lineno}: {message}")
