"""Exception types shared across the package."""


class VortexLatticeError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(VortexLatticeError):
    """Invalid or incomplete run configuration."""


class DarkPointError(VortexLatticeError):
    """Total field amplitude below the dark-point threshold; phase undefined."""


class ResolutionError(VortexLatticeError):
    """Grid too coarse (or too small) for the requested analysis."""


class RingDetectionError(VortexLatticeError):
    """No intensity maxima found in the search region."""


class StepSizeError(VortexLatticeError):
    """Integrator time step too large for the stiffest trap frequency."""


class DivergenceError(VortexLatticeError):
    """Trajectory left the region where the beam fields are meaningful."""


class DegenerateGeometryError(VortexLatticeError):
    """Requested quantity undefined for this beam geometry."""
