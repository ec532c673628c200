"""Exception types shared across the package."""


class LevlabError(Exception):
    """Base class for all package-specific failures."""


class NonUnitaryPath(LevlabError):
    """A constructed boundary path leaves the unitary family."""


class PhaseJumpTooLarge(LevlabError):
    """A single determinant phase step exceeds pi/2 at the sampling cap,
    so the unwrapped winding cannot be certified."""


class WindingNotConverged(LevlabError):
    """Successive winding estimates failed to stabilise at the sample cap."""


class CornerMismatch(LevlabError):
    """Adjacent sides of a boundary loop do not meet at their shared corner."""


class SolverDiverged(LevlabError):
    """Transfer propagation failed its step-halving accuracy check."""


class DecayTooSlow(LevlabError):
    """The potential tail still exceeds the truncation tolerance at the radius cap."""


class ClassificationAmbiguous(LevlabError):
    """Zero-energy growth falls in the dead zone between the two threshold
    classes, or the two classification routes disagree."""


class ResolutionInsufficient(LevlabError):
    """Doubling the grid changed a discrete count."""


class SymmetryRequired(LevlabError):
    """A parity-sector operation was requested for an asymmetric potential."""


class GoldenMismatch(LevlabError):
    """A reproduced table entry differs from its frozen expected value."""


class QuadratureNotConverged(LevlabError):
    """Adaptive quadrature failed to reach its tolerance at the node cap."""


class ConfigError(LevlabError):
    """Invalid configuration input."""
