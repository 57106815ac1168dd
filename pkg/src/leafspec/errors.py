"""Exception types shared across the package."""


class LeafspecError(Exception):
    """Base class for all package errors."""


class ParameterError(LeafspecError, ValueError):
    """Invalid argument values (non-positive radii, bad grids, non-finite input)."""


class GeometryError(LeafspecError, ValueError):
    """Sampled curve is geometrically unusable (self-intersection, coincident nodes)."""


class ResolutionError(LeafspecError, RuntimeError):
    """The requested quantity is not resolvable at the sampled resolution."""


class ConfigurationError(LeafspecError, ValueError):
    """Inconsistent scenario wiring: unresolved labels, size mismatches, missing data."""


class ContractError(LeafspecError, ValueError):
    """An input violates a documented operation contract (e.g. non-idempotent matrix)."""


class DegenerateSymbolError(LeafspecError, ValueError):
    """A one-sided coefficient limit vanishes, so the local exponent is undefined."""
