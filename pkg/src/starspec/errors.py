"""Exception hierarchy for the starspec package."""


class StarspecError(Exception):
    """Base class for all starspec errors."""


class ConfigError(StarspecError):
    """Invalid problem or run configuration."""


class BoundaryZeroError(StarspecError):
    """A zero of the target function is suspected on a contour boundary.

    The caller should perturb the rectangle and retry.
    """

    def __init__(self, message, rect=None):
        super().__init__(message)
        self.rect = rect


class CertificationError(StarspecError):
    """Zero counting / certification failed for a region of the spectral plane."""

    def __init__(self, message, rect=None):
        super().__init__(message)
        self.rect = rect


class RootSearchError(StarspecError):
    """A root refinement did not converge or produced colliding roots."""


class ReconstructionError(StarspecError):
    """Failure inside the inverse pipeline; carries the stage label (i)-(vi)."""

    def __init__(self, stage, message):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


class InsufficientDataError(ReconstructionError):
    """Not enough spectral data for the requested truncation level."""
