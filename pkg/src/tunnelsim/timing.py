"""Phase times, Hartman scans and the universal ``tau ~ 1/nu`` estimates.

The transmission phase follows the scatter convention (``exp(+i w t)``,
forward waves ``exp(-i k x)``), so free propagation has phase ``-k L`` and

    tau = -d(arg t)/d(omega)          (frequency grids)
    tau = -hbar * d(arg t)/d(W_kin)   (energy grids, quantum stacks)

both give ``+L / v_group`` for a free region.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .constants import H, HBAR
from .dispersion import FieldKind, WaveContext, is_evanescent
from .errors import ConfigurationError, DomainError, ResolutionError
from .scatter import ScatterSpectrum, Stack, barrier_wavenumber, transmission_scan

log = logging.getLogger(__name__)

SIGN_CONVENTION = "exp(+i*omega*t - i*k*x)"


@dataclass(frozen=True)
class PhaseSpectrum:
    grid: np.ndarray
    phase: np.ndarray
    energy_grid: bool = False
    convention: str = SIGN_CONVENTION


@dataclass(frozen=True)
class TimingResult:
    """Phase time and universal-time comparisons per grid point."""

    grid: np.ndarray
    tau: np.ndarray
    period: np.ndarray
    universal: np.ndarray
    factor_a: np.ndarray
    t_parallel: np.ndarray
    t_perp: np.ndarray


@dataclass(frozen=True)
class HartmanScan:
    lengths: np.ndarray
    tau: np.ndarray
    tau_saturated: float
    saturated: np.ndarray
    opaqueness: np.ndarray
    transmittance: np.ndarray


def unwrap_phase(raw: Sequence[float], grid: Optional[Sequence[float]] = None,
                 energy_grid: bool = False) -> PhaseSpectrum:
    """Remove ``2 pi`` jumps so consecutive phase steps lie in ``(-pi, pi]``.

    A raw step of exactly ``pi`` cannot be resolved and raises
    :class:`ResolutionError`; refine the grid.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.size < 2:
        raise ConfigurationError("phase unwrapping needs at least 2 points")
    if grid is None:
        grid = np.arange(raw.size, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if grid.shape != raw.shape:
        raise ConfigurationError("grid and phase lengths differ")

    first = math.remainder(raw[0], 2 * math.pi)
    if first == -math.pi:
        first = math.pi
    step = np.remainder(np.diff(raw) + math.pi, 2 * math.pi) - math.pi
    ambiguous = np.isclose(np.abs(step), math.pi, rtol=0, atol=1e-12)
    if ambiguous.any():
        i = int(np.argmax(ambiguous))
        raise ResolutionError(
            f"phase step between points {i} and {i + 1} is pi; the grid is too coarse"
        )
    phase = first + np.concatenate(([0.0], np.cumsum(step)))
    return PhaseSpectrum(grid, phase, energy_grid)


def transmission_phase(spectrum: ScatterSpectrum) -> PhaseSpectrum:
    return unwrap_phase(
        np.angle(spectrum.t), spectrum.grid, spectrum.field_kind is FieldKind.QUANTUM
    )


def phase_time(spec: PhaseSpectrum) -> np.ndarray:
    """Phase time (s) at every grid point, second-order finite differences."""
    if spec.grid.size < 3:
        raise ConfigurationError("phase time needs at least 3 grid points")
    slope = np.gradient(spec.phase, spec.grid, edge_order=2)
    if spec.energy_grid:
        return -HBAR * slope
    return -slope


def universal_time(ctx: WaveContext):
    """``1/nu`` for classical waves, ``h / W_kin`` for massive particles."""
    if ctx.field_kind is FieldKind.QUANTUM:
        w = np.asarray(ctx.energy, dtype=float)
        if np.any(w <= 0):
            raise DomainError("universal time needs W_kin > 0")
        out = H / w
    else:
        nu = np.asarray(ctx.omega, dtype=float) / (2 * math.pi)
        if np.any(nu <= 0):
            raise DomainError("universal time needs nu > 0")
        out = 1.0 / nu
    return float(out) if out.ndim == 0 else out


def esposito_factor(tau, nu):
    """Barrier factor ``A = tau * nu``."""
    if np.any(np.asarray(nu) <= 0):
        raise DomainError("frequency must be > 0")
    return tau * nu


def decompose_components(tau: float, t_perp: float = 0.0):
    """Split ``tau`` into the front-interface part and the in-barrier part.

    A measured ``t_perp`` (e.g. from a symmetric FTIR pulse run) is kept and
    logged as a residual against the zero in-barrier time.
    """
    if tau < 0:
        raise DomainError("tau must be >= 0")
    if t_perp:
        log.info("in-barrier time residual %.3e s (%.3g%% of tau)", t_perp,
                 100 * t_perp / tau if tau else float("inf"))
    return tau - t_perp, t_perp


def analyze(spectrum: ScatterSpectrum, t_perp: float = 0.0) -> TimingResult:
    """Phase time of a scanned spectrum together with the universal-time comparisons."""
    tau = phase_time(transmission_phase(spectrum))
    if spectrum.field_kind is FieldKind.QUANTUM:
        ctx = WaveContext.quantum(spectrum.grid)
    else:
        ctx = WaveContext(spectrum.field_kind, omega=spectrum.grid)
    universal = np.asarray(universal_time(ctx))
    nu = np.asarray(ctx.frequency)
    t_perp_arr = np.full_like(tau, t_perp)
    t_parallel = tau - t_perp_arr
    # re-sum so the stored components add up to the stored tau bit for bit
    tau = t_parallel + t_perp_arr
    return TimingResult(
        grid=spectrum.grid,
        tau=tau,
        period=1.0 / nu,
        universal=universal,
        factor_a=esposito_factor(tau, nu),
        t_parallel=t_parallel,
        t_perp=t_perp_arr,
    )


def hartman_scan(template: Stack, layer: int, lengths: Sequence[float], grid: Sequence[float],
                 probe: Optional[int] = None, threshold: float = 0.01) -> HartmanScan:
    """Phase time at one probe drive point as the designated layer thickens.

    ``tau_saturated`` is the phase time at the largest length; a length is
    flagged saturated when its phase time is within ``threshold`` (relative)
    of it.
    """
    lengths = np.asarray(lengths, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if lengths.ndim != 1 or lengths.size < 1:
        raise ConfigurationError("need at least one barrier length")
    if np.any(np.diff(lengths) < 0):
        raise ConfigurationError("barrier lengths must be ascending")
    if probe is None:
        probe = grid.size // 2
    if not 0 <= probe < grid.size:
        raise ConfigurationError(f"probe index {probe} outside the grid")
    k = barrier_wavenumber(template, layer, grid[probe])
    if not is_evanescent(k) or k == 0:
        raise DomainError(
            f"layer {layer} is not evanescent at the probe point (k = {complex(k):.4g})"
        )
    kappa = float(np.imag(k))

    taus, trans = [], []
    for d in lengths:
        spec = transmission_scan(template.with_thickness(layer, float(d)), grid)
        taus.append(phase_time(transmission_phase(spec))[probe])
        trans.append(spec.transmittance[probe])
    taus = np.array(taus)
    tau_inf = float(taus[-1])
    saturated = np.abs(taus - tau_inf) < threshold * abs(tau_inf)
    return HartmanScan(lengths, taus, tau_inf, saturated, kappa * lengths, np.array(trans))
