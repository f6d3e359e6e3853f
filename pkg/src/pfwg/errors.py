class PfwgError(Exception):
    """Base class for all package errors."""


class ParameterError(PfwgError):
    """Invalid parameters or preconditions."""


class CorruptionError(PfwgError):
    """Structurally inconsistent BWT, graph, or parse data."""


class FormatError(PfwgError):
    """Malformed on-disk artifact."""
