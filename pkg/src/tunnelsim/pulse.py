"""Gaussian wave packets propagated spectrally through a stack.

Pulses are complex analytic signals ``envelope(t) * exp(+i 2 pi nu (t - t0))``
sampled on a uniform grid. Propagation multiplies the discrete spectrum by
``t(omega)`` and ``r(omega)`` (linearly interpolated from a scanned
:class:`~tunnelsim.scatter.ScatterSpectrum`). The transmitted signal is
referenced to the right face of the stack and the reflected one to the left
face, so a zero in-barrier time shows up as equal arrival times.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .dispersion import Electromagnetic, FtirGeometry, Medium, is_evanescent
from .errors import BandError, ConfigurationError, DomainError
from .scatter import Layer, ScatterSpectrum, Stack, barrier_wavenumber, transmission_scan
from .timing import phase_time, transmission_phase

LEAKAGE_LEVEL = 1e-6
TAIL_LEVEL = 1e-16


@dataclass(frozen=True)
class Pulse:
    carrier: float
    width: float
    n_samples: int
    span: float
    samples: np.ndarray = field(repr=False)

    @property
    def dt(self) -> float:
        return self.span / self.n_samples

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_samples) * self.dt

    @property
    def center(self) -> float:
        return self.n_samples // 2 * self.dt

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))

    @property
    def frequencies(self) -> np.ndarray:
        """FFT bin frequencies in Hz, in numpy's FFT order."""
        return np.fft.fftfreq(self.n_samples, self.dt)

    def spectrum(self) -> np.ndarray:
        return np.fft.fft(self.samples)

    def required_band(self, level: float = LEAKAGE_LEVEL):
        """Frequency interval (Hz) outside which the Gaussian spectrum is below ``level``."""
        sigma_f = 1.0 / (2 * math.pi * self.width)
        half = math.sqrt(-2.0 * math.log(level)) * sigma_f
        return self.carrier - half, self.carrier + half

    def frequency_grid(self, oversample: int = 8, level: float = TAIL_LEVEL) -> np.ndarray:
        """Angular-frequency grid covering the pulse band, aligned with the FFT bins.

        The grid step is the bin spacing divided by ``oversample`` and every
        FFT bin inside the band is a grid node.
        """
        df = 1.0 / self.span
        lo, hi = self.required_band(level)
        nyq = 0.5 / self.dt
        lo, hi = max(lo, df), min(hi, nyq - df)
        k0, k1 = math.floor(lo / df), math.ceil(hi / df)
        steps = np.arange((k1 - k0) * oversample + 1)
        return 2 * math.pi * df * (k0 + steps / oversample)

    def shifted(self, n: int) -> "Pulse":
        return replace(self, samples=np.roll(self.samples, n))


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def synthesize(carrier: float, width: float, n_samples: int, span: float,
               band: Optional[tuple] = None) -> Pulse:
    """Gaussian-envelope analytic signal centred in the sampling window.

    ``band`` is the frequency interval (Hz) the pulse must fit into; the
    default is the positive half of the sampled spectrum ``(0, nyquist)``.
    """
    if not _is_power_of_two(n_samples):
        raise ConfigurationError(f"sample count must be a power of two, got {n_samples}")
    if not span > 10 * width:
        raise ConfigurationError("time span must exceed 10 envelope widths")
    if not (carrier > 0 and width > 0):
        raise ConfigurationError("carrier and width must be positive")
    t = np.arange(n_samples) * (span / n_samples)
    t0 = n_samples // 2 * (span / n_samples)
    samples = np.exp(-0.5 * ((t - t0) / width) ** 2) * np.exp(2j * math.pi * carrier * (t - t0))
    pulse = Pulse(carrier, width, n_samples, span, samples)

    if band is None:
        band = (0.0, 0.5 * n_samples / span)
    lo, hi = pulse.required_band()
    if lo < band[0] or hi > band[1]:
        raise BandError(
            f"pulse needs the band [{lo:.6g}, {hi:.6g}] Hz but only "
            f"[{band[0]:.6g}, {band[1]:.6g}] Hz is available"
        )
    return pulse


def propagate(pulse: Pulse, spectrum: ScatterSpectrum):
    """Transmitted and reflected pulses for a scanned angular-frequency spectrum."""
    omega = 2 * math.pi * pulse.frequencies
    x = pulse.spectrum()
    lo, hi = spectrum.grid[0], spectrum.grid[-1]
    inside = (omega >= lo) & (omega <= hi)
    peak = np.abs(x).max()
    if peak == 0:
        raise DomainError("cannot propagate an all-zero pulse")
    if np.any(np.abs(x[~inside]) >= LEAKAGE_LEVEL * peak):
        f_lo, f_hi = pulse.required_band()
        raise BandError(
            f"pulse band [{f_lo:.6g}, {f_hi:.6g}] Hz is not covered by the spectrum "
            f"[{lo / (2 * math.pi):.6g}, {hi / (2 * math.pi):.6g}] Hz"
        )
    w = omega[inside]
    t = np.zeros_like(x)
    r = np.zeros_like(x)
    t[inside] = np.interp(w, spectrum.grid, spectrum.t.real) + 1j * np.interp(w, spectrum.grid, spectrum.t.imag)
    r[inside] = np.interp(w, spectrum.grid, spectrum.r.real) + 1j * np.interp(w, spectrum.grid, spectrum.r.imag)
    transmitted = replace(pulse, samples=np.fft.ifft(x * t))
    reflected = replace(pulse, samples=np.fft.ifft(x * r))
    return transmitted, reflected


def _parabolic(y_m, y_0, y_p) -> float:
    den = y_m - 2 * y_0 + y_p
    if den == 0:
        return 0.0
    return 0.5 * (y_m - y_p) / den


def arrival_time(pulse: Pulse, method: str = "peak", reference: Optional[Pulse] = None) -> float:
    """Arrival time of ``pulse`` (s, measured from the start of the window).

    ``peak`` interpolates a parabola through the log-envelope around its
    maximum (exact for Gaussian envelopes); ``centroid`` is the energy
    weighted mean time; ``cross_correlation`` adds the lag of maximum
    correlation with ``reference`` to the reference's centre time.
    """
    env = np.abs(pulse.samples)
    if not env.any():
        raise DomainError("cannot time an all-zero signal")
    n, dt = pulse.n_samples, pulse.dt
    if method == "peak":
        i = int(np.argmax(env))
        ym, y0, yp = env[(i - 1) % n], env[i], env[(i + 1) % n]
        with np.errstate(divide="ignore"):
            logs = np.log([ym, y0, yp])
        if np.all(np.isfinite(logs)):
            return (i + _parabolic(*logs)) * dt
        return (i + _parabolic(ym, y0, yp)) * dt
    if method == "centroid":
        w = env**2
        return float(np.sum(pulse.times * w) / np.sum(w))
    if method == "cross_correlation":
        if reference is None:
            raise ConfigurationError("cross-correlation timing needs a reference pulse")
        corr = np.abs(np.fft.ifft(np.fft.fft(pulse.samples) * np.conj(np.fft.fft(reference.samples))))
        i = int(np.argmax(corr))
        lag = i + _parabolic(corr[(i - 1) % n], corr[i], corr[(i + 1) % n])
        if lag > n / 2:
            lag -= n
        return reference.center + lag * dt
    raise ConfigurationError(f"unknown arrival method {method!r}")


def all_arrivals(pulse: Pulse, reference: Pulse) -> dict:
    return {m: arrival_time(pulse, m, reference) for m in ("peak", "centroid", "cross_correlation")}


def reshaping(pulse: Pulse, reference: Pulse) -> float:
    """Relative L2 distance between peak-aligned, peak-normalised envelopes."""
    a = np.abs(pulse.samples)
    b = np.abs(reference.samples)
    a = np.roll(a, int(np.argmax(b)) - int(np.argmax(a))) / a.max()
    b = b / b.max()
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


@dataclass(frozen=True)
class ArrivalReport:
    transmitted_peak: float
    reflected_peak: float
    cross_correlation_delay: float
    reshaping: float
    carrier_period: float
    arrivals: dict
    input: Pulse = field(repr=False)
    transmitted: Pulse = field(repr=False)
    reflected: Pulse = field(repr=False)

    @property
    def t_perp(self) -> float:
        """Transmitted minus reflected peak arrival: the time spent crossing the gap."""
        return self.transmitted_peak - self.reflected_peak

    @property
    def transmitted_delay(self) -> float:
        return self.transmitted_peak - self.input.center


def pulse_experiment(stack: Stack, pulse: Pulse, oversample: int = 8,
                     spectrum: Optional[ScatterSpectrum] = None) -> ArrivalReport:
    """Send ``pulse`` at ``stack`` and time both outgoing signals."""
    if spectrum is None:
        spectrum = transmission_scan(stack, pulse.frequency_grid(oversample))
    tx, rx = propagate(pulse, spectrum)
    arrivals = {"transmitted": all_arrivals(tx, pulse)}
    # below this the reflected signal is numerical noise
    if rx.energy > 1e-24 * pulse.energy:
        arrivals["reflected"] = all_arrivals(rx, pulse)
    else:
        arrivals["reflected"] = dict.fromkeys(arrivals["transmitted"], math.nan)
    return ArrivalReport(
        transmitted_peak=arrivals["transmitted"]["peak"],
        reflected_peak=arrivals["reflected"]["peak"],
        cross_correlation_delay=arrivals["transmitted"]["cross_correlation"] - pulse.center,
        reshaping=reshaping(tx, pulse),
        carrier_period=1.0 / pulse.carrier,
        arrivals=arrivals,
        input=pulse,
        transmitted=tx,
        reflected=rx,
    )


def symmetric_ftir_experiment(gap: Layer, prisms: Medium, pulse: Pulse,
                              incidence_angle: float = math.pi / 4,
                              oversample: int = 8) -> ArrivalReport:
    """Double-prism run: equal transmitted and reflected arrivals mean no time in the gap."""
    if not isinstance(prisms, Electromagnetic) or not isinstance(gap.medium, Electromagnetic):
        raise ConfigurationError("the double-prism experiment is electromagnetic")
    geom = FtirGeometry(incidence_angle, float(np.real(prisms.index)), float(np.real(gap.medium.index)))
    stack = Stack(prisms, (gap,), prisms, geom)
    k = barrier_wavenumber(stack, 0, 2 * math.pi * pulse.carrier)
    if not is_evanescent(k) or k == 0:
        raise DomainError("the gap is not evanescent at the carrier: no frustrated total reflection")
    return pulse_experiment(stack, pulse, oversample)


def carrier_phase_time(spectrum: ScatterSpectrum, carrier: float) -> float:
    """Phase time interpolated at the carrier angular frequency."""
    tau = phase_time(transmission_phase(spectrum))
    return float(np.interp(2 * math.pi * carrier, spectrum.grid, tau))


def timeseries_csv(transmitted: Pulse, reflected: Pulse) -> str:
    """Comma-separated time series of both outgoing signals."""
    buf = io.StringIO()
    buf.write("time_s,re_transmitted,im_transmitted,re_reflected,im_reflected\n")
    for row in zip(transmitted.times, transmitted.samples.real, transmitted.samples.imag,
                   reflected.samples.real, reflected.samples.imag):
        buf.write(",".join(f"{v:.12e}" for v in row) + "\n")
    return buf.getvalue()
