"""Reflection and transmission amplitudes of layered 1D stacks.

Conventions
-----------
Time dependence ``exp(+i w t)``; a wave travelling towards ``+x`` is
``exp(-i k x)``. The incident wave has unit amplitude at the left face of the
stack (``x = 0``). ``r`` is the amplitude of the ``exp(+i k x)`` wave in the
left lead referenced to ``x = 0``; ``t`` is the transmitted amplitude in the
right lead referenced to the right face ``x = L``. Free propagation over
``L`` therefore gives ``t = exp(-i k L)``.

Every field kind obeys ``phi'' + k**2 phi = 0`` with ``phi`` and ``phi'/g``
continuous at interfaces, where ``g`` is the coupling of the medium (``mu_r``
for TE electromagnetic waves, the density for acoustic pressure, the mass
for Schroedinger waves). The interface admittance is ``Y = k / g``.

Layers are composed with the Redheffer star product of scattering matrices.
Inside a layer the decaying orientation of ``k`` is used so propagation
factors never exceed one in modulus, which keeps very opaque layers
(``kappa d`` in the hundreds) finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .constants import HBAR
from .dispersion import (
    FieldKind,
    FtirGeometry,
    Geometry,
    Medium,
    WaveContext,
    bulk_k_squared,
    is_propagating,
    normal_wavenumber,
    principal_sqrt,
    transverse_wavenumber,
    wavenumber,
)
from .errors import ConfigurationError, DomainError, LeadError

# admittance ratios beyond this make the interface route lose digits on thin layers
_DEGENERATE_RATIO = 1e-6


@dataclass(frozen=True)
class Layer:
    medium: Medium
    thickness: float

    def __post_init__(self):
        if not self.thickness >= 0:
            raise ConfigurationError(f"layer thickness must be >= 0, got {self.thickness}")


@dataclass(frozen=True)
class Stack:
    """Finite layers between two semi-infinite leads."""

    left_lead: Medium
    layers: tuple = ()
    right_lead: Optional[Medium] = None
    geometry: Optional[Geometry] = None

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.right_lead is None:
            object.__setattr__(self, "right_lead", self.left_lead)
        kind = self.left_lead.kind
        for m in [self.right_lead] + [layer.medium for layer in self.layers]:
            if m.kind is not kind:
                raise ConfigurationError(
                    f"stack mixes {kind.value} and {m.kind.value} media"
                )
        if self.geometry is not None and kind is FieldKind.QUANTUM:
            raise ConfigurationError("quantum stacks take no geometry")
        if isinstance(self.geometry, FtirGeometry) and kind is FieldKind.ELECTROMAGNETIC:
            n_left = self.left_lead.index
            if abs(n_left - self.geometry.prism_index) > 1e-9 * abs(n_left):
                raise ConfigurationError(
                    f"FTIR prism index {self.geometry.prism_index} does not match "
                    f"the left lead index {n_left}"
                )

    @property
    def field_kind(self) -> FieldKind:
        return self.left_lead.kind

    @property
    def thickness(self) -> float:
        return float(sum(layer.thickness for layer in self.layers))

    def context(self, drive) -> WaveContext:
        if self.field_kind is FieldKind.QUANTUM:
            return WaveContext.quantum(drive)
        return WaveContext(self.field_kind, omega=drive, geometry=self.geometry)

    def reversed(self) -> "Stack":
        return Stack(self.right_lead, tuple(reversed(self.layers)), self.left_lead, self.geometry)

    def with_thickness(self, index: int, thickness: float) -> "Stack":
        layers = list(self.layers)
        layers[index] = Layer(layers[index].medium, thickness)
        return Stack(self.left_lead, tuple(layers), self.right_lead, self.geometry)


@dataclass(frozen=True)
class ScatterAmplitudes:
    t: complex
    r: complex
    flux_ratio: float

    @property
    def transmittance(self) -> float:
        return float(self.flux_ratio * abs(self.t) ** 2)

    @property
    def reflectance(self) -> float:
        return float(abs(self.r) ** 2)


@dataclass(frozen=True)
class ScatterSpectrum:
    """Amplitudes over an ordered drive grid (rad/s, or joule for quantum stacks)."""

    grid: np.ndarray
    t: np.ndarray
    r: np.ndarray
    flux_ratio: np.ndarray
    field_kind: FieldKind
    stack: Optional[Stack] = field(default=None, compare=False)

    def __len__(self):
        return len(self.grid)

    def __getitem__(self, i) -> ScatterAmplitudes:
        return ScatterAmplitudes(complex(self.t[i]), complex(self.r[i]), float(self.flux_ratio[i]))

    @property
    def transmittance(self) -> np.ndarray:
        return self.flux_ratio * np.abs(self.t) ** 2

    @property
    def reflectance(self) -> np.ndarray:
        return np.abs(self.r) ** 2


# --- scattering-matrix algebra -------------------------------------------------
# An S-matrix is the tuple (r, t, rp, tp): reflection and transmission for
# incidence from the left, then from the right. Entries broadcast over grids.

def _identity(shape):
    zero = np.zeros(shape, dtype=complex)
    return (zero, zero + 1.0, zero, zero + 1.0)


def star(a, b):
    """Redheffer star product: ``a`` on the left, ``b`` on the right."""
    ra, ta, rpa, tpa = a
    rb, tb, rpb, tpb = b
    den = 1.0 - rpa * rb
    return (
        ra + tpa * rb * ta / den,
        tb * ta / den,
        rpb + tb * rpa * tpb / den,
        tpa * tpb / den,
    )


def _interface(y1, y2):
    s = y1 + y2
    r = (y1 - y2) / s
    return (r, 2.0 * y1 / s, -r, 2.0 * y2 / s)


def _propagation(k, d):
    p = np.exp(-1j * k * d)
    zero = np.zeros_like(p)
    return (zero, p, zero, p)


def _decaying(k):
    # exp(-i k x) decays towards +x when Im(k) <= 0
    return np.where(np.imag(k) > 0, -k, k)


def _layer_by_interfaces(y0, k, g, d):
    k = _decaying(k)
    y = k / g
    return star(star(_interface(y0, y), _propagation(k, d)), _interface(y, y0))


def _layer_by_transfer(y0, k, g, d):
    # Transfer matrix of (phi, phi'/g) written so that k -> 0 stays regular.
    kd = k * d
    small = np.abs(kd) < 1e-8
    safe_k = np.where(small, 1.0, k)
    sin_over_k = np.where(small, d * (1.0 - kd**2 / 6.0), np.sin(kd) / safe_k)
    sigma = y0 * g * sin_over_k
    rho = k * k * sin_over_k / (g * y0)
    t22 = np.cos(kd) + 0.5j * (sigma + rho)
    r = 0.5j * (sigma - rho) / t22
    t = 1.0 / t22
    return (r, t, r, t)


def _layer_smatrix(y0, k, g, d):
    """Layer of thickness ``d`` embedded in a reference medium of admittance ``y0``."""
    ratio = np.abs(k / g) / np.abs(y0)
    degenerate = (ratio < _DEGENERATE_RATIO) | (ratio > 1.0 / _DEGENERATE_RATIO)
    if not np.any(degenerate):
        return _layer_by_interfaces(y0, k, g, d)
    with np.errstate(all="ignore"):
        a = _layer_by_interfaces(y0, k, g, d)
        b = _layer_by_transfer(y0, k, g, d)
    return tuple(np.where(degenerate, bi, ai) for ai, bi in zip(a, b))


def _lead_wavenumbers(stack: Stack, ctx: WaveContext, q):
    kl = normal_wavenumber(stack.left_lead, ctx, q)
    kr = normal_wavenumber(stack.right_lead, ctx, q)
    for name, k in (("left", kl), ("right", kr)):
        ok = np.atleast_1d(is_propagating(k))
        if not ok.all():
            i = int(np.argmin(ok))
            drive = np.atleast_1d(ctx.drive)
            at = drive[i] if drive.size > 1 else drive[0]
            raise LeadError(
                f"{name} lead is not propagating at drive point {i} ({at:.6g}); k = "
                f"{np.atleast_1d(k)[i]:.6g}",
                index=i,
            )
    return np.real(kl), np.real(kr)


def _smatrix(stack: Stack, ctx: WaveContext):
    drive = np.asarray(ctx.drive, dtype=float)
    q = transverse_wavenumber(stack.left_lead, ctx)
    kl, kr = _lead_wavenumbers(stack, ctx, q)
    yl = kl / stack.left_lead.coupling
    yr = kr / stack.right_lead.coupling
    s = _identity(drive.shape)
    for layer in stack.layers:
        if layer.thickness == 0:
            continue
        k = normal_wavenumber(layer.medium, ctx, q)
        s = star(s, _layer_smatrix(yl, k, layer.medium.coupling, layer.thickness))
    s = star(s, _interface(yl, yr))
    flux = np.real(yr) / np.real(yl)
    return s, flux


def interface_amplitudes(left: Medium, right: Medium, ctx: WaveContext):
    """Single-interface amplitudes ``(r, t)`` for incidence from ``left``.

    ``r = (Y_left - Y_right) / (Y_left + Y_right)`` with ``Y = k / g``; for
    normal-incidence light this is the familiar ``(n1 - n2) / (n1 + n2)``. For
    acoustic waves the amplitudes are those of the pressure.
    """
    if left.kind is not ctx.field_kind or right.kind is not ctx.field_kind:
        raise ConfigurationError("media do not match the context field kind")
    if isinstance(ctx.geometry, FtirGeometry) and ctx.field_kind is FieldKind.ACOUSTIC:
        q = transverse_wavenumber(left, ctx)
        k1, k2 = normal_wavenumber(left, ctx, q), normal_wavenumber(right, ctx, q)
    else:
        k1, k2 = wavenumber(left, ctx), wavenumber(right, ctx)
    y1 = k1 / left.coupling
    y2 = k2 / right.coupling
    if np.any(np.abs(y1 + y2) == 0):
        raise ConfigurationError("interface admittances sum to zero; amplitudes undefined")
    r, t, _, _ = _interface(y1, y2)
    return r[()] if np.ndim(r) == 0 else r, t[()] if np.ndim(t) == 0 else t


def stack_scatter(stack: Stack, ctx: WaveContext) -> ScatterAmplitudes:
    if ctx.field_kind is not stack.field_kind:
        raise ConfigurationError("context field kind differs from the stack's")
    if np.ndim(ctx.drive) != 0:
        raise ConfigurationError("stack_scatter takes a scalar drive; use transmission_scan")
    (r, t, _, _), flux = _smatrix(stack, stack.context(ctx.drive))
    return ScatterAmplitudes(complex(t), complex(r), float(flux))


def transmission_scan(stack: Stack, grid: Sequence[float]) -> ScatterSpectrum:
    """Evaluate ``stack`` at every drive value of a strictly increasing grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ConfigurationError("scan grid needs at least 2 points")
    if np.any(np.diff(grid) <= 0):
        raise ConfigurationError("scan grid must be strictly increasing")
    (r, t, _, _), flux = _smatrix(stack, stack.context(grid))
    return ScatterSpectrum(
        grid=grid,
        t=np.asarray(t),
        r=np.asarray(r),
        flux_ratio=np.broadcast_to(flux, grid.shape).astype(float),
        field_kind=stack.field_kind,
        stack=stack,
    )


def rectangular_barrier_amplitude(barrier: Layer, leads: Medium, ctx: WaveContext) -> ScatterAmplitudes:
    """Closed-form amplitudes of one homogeneous layer between identical leads.

    Evanescent layers use hyperbolic functions pre-scaled by ``exp(-kappa d)``
    so the expression stays finite for any opaqueness.
    """
    if barrier.medium.kind is not leads.kind or leads.kind is not ctx.field_kind:
        raise ConfigurationError("barrier, leads and context must share a field kind")
    q = transverse_wavenumber(leads, ctx)
    k0 = normal_wavenumber(leads, ctx, q)
    if not np.all(is_propagating(k0)):
        raise LeadError("leads are not propagating")
    y0 = np.real(k0) / leads.coupling
    d = barrier.thickness
    g = barrier.medium.coupling
    k = normal_wavenumber(barrier.medium, ctx, q)
    if d == 0:
        return ScatterAmplitudes(1.0 + 0j, 0j, 1.0)
    if np.real(k) == 0 and np.imag(g) == 0:
        kappa = float(np.imag(k))
        eta = kappa / np.real(g)
        e2 = np.exp(-2.0 * kappa * d)
        den = (1.0 + e2) + 0.5j * (y0 / eta - eta / y0) * (1.0 - e2)
        t = 2.0 * np.exp(-kappa * d) / den
        r = 0.5j * (y0 / eta + eta / y0) * (1.0 - e2) / den
    else:
        y = k / g
        c, s = np.cos(k * d), np.sin(k * d)
        den = c + 0.5j * (y0 / y + y / y0) * s
        t = 1.0 / den
        r = 0.5j * (y0 / y - y / y0) * s / den
    return ScatterAmplitudes(complex(t), complex(r), 1.0)


def barrier_wavenumber(stack: Stack, index: int, drive):
    """Normal wavenumber inside layer ``index`` of ``stack`` at ``drive``."""
    ctx = stack.context(drive)
    q = transverse_wavenumber(stack.left_lead, ctx)
    return normal_wavenumber(stack.layers[index].medium, ctx, q)


def lead_wavenumber(stack: Stack, drive, side: str = "left"):
    ctx = stack.context(drive)
    q = transverse_wavenumber(stack.left_lead, ctx)
    medium = stack.left_lead if side == "left" else stack.right_lead
    return normal_wavenumber(medium, ctx, q)


def group_velocity(medium: Medium, ctx: WaveContext):
    """Group velocity of a propagating homogeneous region (no geometry)."""
    k = principal_sqrt(bulk_k_squared(medium, ctx))
    if not np.all(is_propagating(k)):
        raise DomainError("group velocity needs a propagating region")
    if medium.kind is FieldKind.QUANTUM:
        return HBAR * np.real(k) / medium.mass
    return np.real(ctx.omega / k)
