"""Exception hierarchy shared by the solver modules."""


class TwoFluidError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TwoFluidError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SingularityError(DomainError):
    """The liquid pressure law is evaluated at (or across) m_L = rho_L."""


class HyperbolicityError(DomainError):
    """A characteristic speed became complex."""


class DegenerateEigenvalueError(TwoFluidError, ArithmeticError):
    """Two eigenvalues of a 2x2 Roe matrix coincide."""


class BracketError(TwoFluidError, ValueError):
    """A root-finding bracket does not contain a sign change."""


class IntegrationError(TwoFluidError, RuntimeError):
    """The ODE integrator failed before reaching the end of the interval.

    Attributes
    ----------
    last_xi : float
        Last parameter value reached successfully.
    """

    def __init__(self, message, last_xi=None):
        super().__init__(message)
        self.last_xi = last_xi


class ConstructionError(TwoFluidError):
    """An exact Riemann solution could not be built from the given parameters.

    ``check`` names the violated condition, e.g. ``"lax:mu1"``.
    """

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class SolverAbort(TwoFluidError, RuntimeError):
    """A time step failed; carries the offending cell index and time."""

    def __init__(self, message, index=None, time=None):
        super().__init__(message)
        self.index = index
        self.time = time


class ResonanceError(IntegrationError):
    """A gas wave speed met a liquid wave speed along a rarefaction curve."""
