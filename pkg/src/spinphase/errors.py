"""Exception types shared across the library."""


class SpinPhaseError(Exception):
    """Base class for all library errors."""


class DomainBoundaryError(SpinPhaseError):
    """Parameters sit on a boundary where the eigenvector formulas break down."""


class DegeneratePhaseError(SpinPhaseError):
    """The phase argument vanishes; Arg is undefined (vortex point)."""


class OutOfTransitionRangeError(SpinPhaseError):
    """Depolarization strength outside the range where a transition exists."""


class ConvergenceFailureError(SpinPhaseError):
    """Step doubling did not stabilize the holonomy phase within budget."""


class IllPosedError(SpinPhaseError):
    """Winding-number curve passes through (or too close to) the root."""


class GridTooCoarseError(SpinPhaseError):
    """Phase grid too coarse for reliable vortex detection."""
