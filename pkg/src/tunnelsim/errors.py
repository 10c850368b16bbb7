"""Exception hierarchy shared by all modules."""


class TunnelSimError(Exception):
    """Base class for every error raised by tunnelsim."""


class ConfigurationError(TunnelSimError, ValueError):
    """Inconsistent inputs: wrong medium for a field kind, bad geometry, bad units."""


class DomainError(TunnelSimError, ValueError):
    """A value outside the mathematical domain of an operation."""


class ResolutionError(TunnelSimError, ValueError):
    """A grid too coarse to resolve the quantity being computed."""


class BandError(TunnelSimError, ValueError):
    """Pulse spectrum and evaluated frequency band do not fit together."""


class LeadError(ConfigurationError):
    """A semi-infinite lead does not carry a propagating wave at some drive point."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
