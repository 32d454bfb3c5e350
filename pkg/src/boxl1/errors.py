"""Exception hierarchy shared by all submodules."""


class Boxl1Error(Exception):
    """Base class for every error raised by this package."""


class DomainError(Boxl1Error, ValueError):
    """Argument outside the mathematical domain of a function."""


class OverflowDomain(DomainError):
    """Result would overflow double precision; use the log-domain variant."""


class NoConvergence(Boxl1Error, ArithmeticError):
    """An iterative numerical routine exhausted its budget."""


class QuadratureFailure(NoConvergence):
    """Adaptive quadrature did not reach the requested tolerance."""


class NoBracket(Boxl1Error, ValueError):
    """A root or extremum could not be bracketed."""


class EmptyRange(Boxl1Error, ValueError):
    """An optimisation range is empty or degenerate."""


class InvalidFace(Boxl1Error, ValueError):
    """Face index outside the admissible range for the model."""


class InvalidDims(Boxl1Error, ValueError):
    """Inconsistent problem dimensions."""


class LpError(Boxl1Error):
    """Linear-program solve did not produce a usable answer."""


class Infeasible(LpError):
    pass


class IterationLimit(LpError):
    pass


class RankDeficient(LpError):
    """Measurement matrix does not have full row rank."""
