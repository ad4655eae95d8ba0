"""Exception hierarchy shared by every module."""


class RoundBipError(Exception):
    """Base class for all errors raised by the package."""


class InvalidSet(RoundBipError, ValueError):
    pass


class InvalidSolution(RoundBipError, ValueError):
    pass


class DegenerateWeights(RoundBipError, ValueError):
    pass


class NoEdges(RoundBipError, ValueError):
    pass


class NotBipartite(RoundBipError, ValueError):
    pass


class NotBipartizing(RoundBipError, ValueError):
    """Removing the given set does not leave a bipartite graph."""


class BipartiteContraction(RoundBipError, ValueError):
    """The contracted graph has no odd cycle, so rho is undefined."""


class UnnormalizedDual(RoundBipError, ValueError):
    pass


class InvalidRho(RoundBipError, ValueError):
    pass


class InvalidCycle(RoundBipError, ValueError):
    pass


class InvalidCombination(RoundBipError, ValueError):
    pass


class NotIndependent(RoundBipError, ValueError):
    pass


class InvalidParams(RoundBipError, ValueError):
    pass


class NoOddCycle(RoundBipError, ValueError):
    pass


class TooFewColors(RoundBipError, ValueError):
    pass


class NotInQW(RoundBipError, ValueError):
    """The weights admit no tight dual, i.e. the all-half point is not LP optimal."""


class NotNearBipartite(RoundBipError, ValueError):
    pass


class InvalidColoring(RoundBipError, ValueError):
    pass


class InvalidFcn(RoundBipError, ValueError):
    pass


class TooLarge(RoundBipError, ValueError):
    """An exponential oracle was asked to run above its vertex budget."""


class ParseError(RoundBipError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
