"""Evanescent-mode scattering, phase times, pulse propagation and virtuality checks.

One-dimensional stacks of electromagnetic, acoustic or quantum media are
solved in the frequency (or energy) domain. Tunneling times follow from the
phase of the transmission amplitude and are compared with the carrier period.
"""

from .dispersion import (
    Acoustic,
    Electromagnetic,
    FieldKind,
    FtirGeometry,
    Quantum,
    WaveContext,
    WaveguideGeometry,
    is_evanescent,
    is_opaque,
    opaqueness,
    wavenumber,
)
from .errors import (
    BandError,
    ConfigurationError,
    DomainError,
    LeadError,
    ResolutionError,
    TunnelSimError,
)
from .pulse import Pulse, arrival_time, propagate, pulse_experiment, synthesize
from .scatter import (
    Layer,
    ScatterAmplitudes,
    ScatterSpectrum,
    Stack,
    rectangular_barrier_amplitude,
    stack_scatter,
    transmission_scan,
)
from .timing import (
    analyze,
    esposito_factor,
    hartman_scan,
    phase_time,
    transmission_phase,
    universal_time,
)
from .virtuality import VirtualityReport, assess_region

__version__ = "0.1.0"

__all__ = [
    "Acoustic", "Electromagnetic", "FieldKind", "FtirGeometry", "Quantum", "WaveContext",
    "WaveguideGeometry", "is_evanescent", "is_opaque", "opaqueness", "wavenumber",
    "BandError", "ConfigurationError", "DomainError", "LeadError", "ResolutionError",
    "TunnelSimError", "Pulse", "arrival_time", "propagate", "pulse_experiment", "synthesize",
    "Layer", "ScatterAmplitudes", "ScatterSpectrum", "Stack", "rectangular_barrier_amplitude",
    "stack_scatter", "transmission_scan", "analyze", "esposito_factor", "hartman_scan",
    "phase_time", "transmission_phase", "universal_time", "VirtualityReport", "assess_region",
]
