class HypernetError(Exception):
    """Base class for every error raised by hypernet."""


class TopologyOverflowError(HypernetError, OverflowError):
    """A count left the unsigned 64-bit range."""


class UnsupportedFamilyError(HypernetError, ValueError):
    """The operation is not defined for this topology family."""


class GraphSizeError(HypernetError):
    """The graph is larger than the configured construction or all-pairs cap."""


class GraphModeError(HypernetError, ValueError):
    """Graph construction needs integral parameters."""


class SpecMismatchError(HypernetError, ValueError):
    """Two results that must describe the same topology do not."""
