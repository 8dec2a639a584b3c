"""Exception hierarchy shared by every module.

Domain errors all derive from ``PerfectWError`` so the CLI can map them to
exit status 1 in one place.
"""


class PerfectWError(ValueError):
    pass


class DimensionError(PerfectWError):
    pass


class NormalizationError(PerfectWError):
    pass


class NotGenuinelyEntangledError(PerfectWError):
    """The state cannot be written as a superposition of a W-pair."""


class DegenerateAlphaError(PerfectWError):
    """Some alpha coefficient would be zero."""


class GeometryError(PerfectWError):
    pass


class CircuitError(PerfectWError):
    pass


class TruncationError(PerfectWError):
    pass
