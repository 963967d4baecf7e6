"""Exception hierarchy shared by all modules."""


class BFError(Exception):
    """Base class for all package errors."""


class PreconditionError(BFError):
    """An input violates a documented precondition."""


class SolverError(BFError):
    """A numerical procedure failed to produce a trustworthy result."""


class OutOfRange(PreconditionError):
    """Depth outside the configured compact range."""


class TruncationTooSmall(PreconditionError):
    """Fourier truncation cannot represent the requested operator."""


class EmptyWindow(PreconditionError):
    """The unstable Floquet window is empty at the requested point."""


class CompositionOverflow(PreconditionError):
    """A jet order beyond the available expansion order was requested."""


class SolvabilityViolation(SolverError):
    """A right-hand side keeps a kernel component after the speed correction."""


class SingularSylvester(SolverError):
    """The block-decoupling linear system is numerically singular."""


class BracketFailure(SolverError):
    """No sign change was found in the root bracket."""


class PairingFailure(SolverError):
    """No eigenvalue quadruple closed under the Hamiltonian reflection exists."""
