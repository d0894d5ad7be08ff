"""Exception types shared across the package."""


class PhotonLinkError(Exception):
    """Base class for all package-specific errors."""


class ZeroDetuningError(PhotonLinkError):
    """Effective parameters require nonzero sideband detunings."""


class NegativeOccupationError(PhotonLinkError):
    """Thermal occupation numbers must be nonnegative."""


class BadIndexError(PhotonLinkError):
    """Mode index outside the state."""


class UnsupportedCaseError(PhotonLinkError):
    """Operation only defined in a restricted (symmetric) parameter regime."""


class UnstableError(PhotonLinkError):
    """Drift matrix has a non-decaying eigenvalue; no steady state exists."""


class NonFiniteResultError(PhotonLinkError):
    """Propagation overflowed (unstable dynamics at large time)."""


class InvalidConfigError(PhotonLinkError):
    """Scenario configuration failed validation."""
