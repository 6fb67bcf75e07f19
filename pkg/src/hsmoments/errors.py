"""Exception hierarchy shared by the solver modules and the CLI."""


class MomentError(Exception):
    """Base class for every error raised by :mod:`hsmoments`."""


class InvalidArgumentError(MomentError, ValueError):
    pass


class AssemblyError(MomentError):
    """An assembled system violates one of the structural requirements."""


class InconsistencyError(MomentError):
    """Numerical ranks or eigenvalue counts contradict the theory.

    Usually means the rank threshold is wrong for the problem at hand.
    """


class IllPosedBoundaryError(MomentError):
    """The boundary system is rank deficient."""


class InconsistentDataError(MomentError):
    """Boundary data lies outside the range of the boundary operator."""


class UnsupportedConfigurationError(MomentError):
    pass


class ConfigurationError(MomentError):
    """A problem driver found decomposition counts other than expected."""
