"""Field kinds, media and the complex wavenumber of a homogeneous region.

Electromagnetic, acoustic and Schroedinger waves all reduce to the same
one-dimensional Helmholtz equation ``phi'' + k**2 phi = 0``. This module maps
each supported configuration onto that single complex ``k``.

Branch convention: the returned wavenumber is the square root of ``k**2``
with ``Im(k) >= 0`` and, when ``k`` is real, ``Re(k) >= 0``. A purely
imaginary ``k`` marks an evanescent (tunneling) region.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .constants import C, ELECTRON_MASS, H, HBAR
from .errors import ConfigurationError, DomainError

EVANESCENT_TOL = 1e-12


class FieldKind(enum.Enum):
    ELECTROMAGNETIC = "electromagnetic"
    ACOUSTIC = "acoustic"
    QUANTUM = "quantum"


@dataclass(frozen=True)
class Electromagnetic:
    """Dielectric region described by relative permittivity and permeability."""

    eps_r: complex = 1.0
    mu_r: complex = 1.0

    kind = FieldKind.ELECTROMAGNETIC

    @classmethod
    def from_index(cls, n: float) -> "Electromagnetic":
        return cls(eps_r=n * n, mu_r=1.0)

    @property
    def index(self) -> complex:
        """Refractive index ``sqrt(eps_r * mu_r)`` on the ``Im >= 0`` branch."""
        return complex(principal_sqrt(self.eps_r * self.mu_r))

    @property
    def coupling(self) -> complex:
        # TE matching: E_y and (1/mu) dE_y/dx are continuous
        return self.mu_r


@dataclass(frozen=True)
class Acoustic:
    """Fluid-like region; the wave field is the acoustic pressure."""

    sound_speed: float
    density: float

    kind = FieldKind.ACOUSTIC

    def __post_init__(self):
        if not self.sound_speed > 0:
            raise ConfigurationError(f"sound_speed must be > 0, got {self.sound_speed}")
        if not self.density > 0:
            raise ConfigurationError(f"density must be > 0, got {self.density}")

    @property
    def impedance(self) -> float:
        return self.density * self.sound_speed

    @property
    def coupling(self) -> float:
        # pressure and (1/rho) dp/dx are continuous
        return self.density


@dataclass(frozen=True)
class Quantum:
    """Constant-potential region for a non-relativistic particle (electron by default)."""

    potential: float
    mass: float = ELECTRON_MASS

    kind = FieldKind.QUANTUM

    def __post_init__(self):
        if not self.mass > 0:
            raise ConfigurationError(f"particle mass must be > 0, got {self.mass}")

    @property
    def coupling(self) -> float:
        # psi and (1/m) dpsi/dx are continuous
        return self.mass


Medium = Union[Electromagnetic, Acoustic, Quantum]


@dataclass(frozen=True)
class FtirGeometry:
    """Oblique incidence from a dense prism onto a gap (frustrated total reflection)."""

    incidence_angle: float
    prism_index: float
    gap_index: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.incidence_angle < math.pi / 2:
            raise ConfigurationError(
                f"incidence angle must lie in [0, pi/2), got {self.incidence_angle}"
            )
        if not (self.prism_index > 0 and self.gap_index > 0):
            raise ConfigurationError("prism and gap indices must be positive")

    @property
    def snell_ratio(self) -> float:
        return self.prism_index / self.gap_index * math.sin(self.incidence_angle)

    @property
    def refraction_angle(self) -> Optional[float]:
        """Refraction angle in the gap, or ``None`` beyond the critical angle."""
        s = self.snell_ratio
        if s > 1.0:
            return None
        return math.asin(s)

    @property
    def critical_angle(self) -> Optional[float]:
        if self.prism_index <= self.gap_index:
            return None
        return math.asin(self.gap_index / self.prism_index)


@dataclass(frozen=True)
class WaveguideGeometry:
    """Dominant guided mode with a fixed cutoff (empty-guide value, rad/s)."""

    cutoff_frequency: float

    def __post_init__(self):
        if not self.cutoff_frequency > 0:
            raise ConfigurationError("waveguide cutoff frequency must be > 0")

    @classmethod
    def from_width(cls, width: float) -> "WaveguideGeometry":
        return cls(math.pi * C / width)

    @property
    def transverse_wavenumber(self) -> float:
        return self.cutoff_frequency / C


Geometry = Union[FtirGeometry, WaveguideGeometry]


@dataclass(frozen=True)
class WaveContext:
    """Field kind plus the drive: angular frequency (EM, acoustic) or kinetic energy.

    ``omega`` or ``energy`` may be a numpy array; every operation broadcasts.
    """

    field_kind: FieldKind
    omega: Optional[object] = None
    energy: Optional[object] = None
    geometry: Optional[Geometry] = None

    def __post_init__(self):
        quantum = self.field_kind is FieldKind.QUANTUM
        if quantum and (self.energy is None or self.omega is not None):
            raise ConfigurationError("quantum contexts are driven by kinetic energy only")
        if not quantum and (self.omega is None or self.energy is not None):
            raise ConfigurationError(
                f"{self.field_kind.value} contexts are driven by angular frequency only"
            )
        if quantum and self.geometry is not None:
            raise ConfigurationError("geometries apply to electromagnetic/acoustic waves only")
        if isinstance(self.geometry, WaveguideGeometry) and (
            self.field_kind is not FieldKind.ELECTROMAGNETIC
        ):
            raise ConfigurationError("waveguide geometry is electromagnetic only")

    @classmethod
    def electromagnetic(cls, omega, geometry=None) -> "WaveContext":
        return cls(FieldKind.ELECTROMAGNETIC, omega=omega, geometry=geometry)

    @classmethod
    def acoustic(cls, omega, geometry=None) -> "WaveContext":
        return cls(FieldKind.ACOUSTIC, omega=omega, geometry=geometry)

    @classmethod
    def quantum(cls, energy) -> "WaveContext":
        return cls(FieldKind.QUANTUM, energy=energy)

    @property
    def drive(self):
        return self.energy if self.field_kind is FieldKind.QUANTUM else self.omega

    @property
    def frequency(self):
        """Carrier frequency in Hz: ``omega / 2pi`` or ``W / h``."""
        if self.field_kind is FieldKind.QUANTUM:
            return np.asarray(self.energy) / H
        return np.asarray(self.omega) / (2 * math.pi)

    def with_drive(self, drive) -> "WaveContext":
        if self.field_kind is FieldKind.QUANTUM:
            return WaveContext(self.field_kind, energy=drive)
        return WaveContext(self.field_kind, omega=drive, geometry=self.geometry)


def principal_sqrt(k2):
    """Square root with ``Im >= 0``; real results get ``Re >= 0``."""
    k = np.sqrt(np.asarray(k2, dtype=complex))
    k = np.where(k.imag < 0, -k, k)
    k = np.where((k.imag == 0) & (k.real < 0), -k, k)
    return k[()] if k.ndim == 0 else k


def _check_kind(medium: Medium, ctx: WaveContext) -> None:
    if medium.kind is not ctx.field_kind:
        raise ConfigurationError(
            f"{type(medium).__name__} medium used in a {ctx.field_kind.value} context"
        )


def bulk_k_squared(medium: Medium, ctx: WaveContext):
    """``k**2`` of an unbounded region, ignoring any geometry."""
    _check_kind(medium, ctx)
    if isinstance(medium, Electromagnetic):
        w = np.asarray(ctx.omega, dtype=float)
        return medium.eps_r * medium.mu_r * (w / C) ** 2
    if isinstance(medium, Acoustic):
        w = np.asarray(ctx.omega, dtype=float)
        return (w / medium.sound_speed) ** 2
    W = np.asarray(ctx.energy, dtype=float)
    return 2.0 * medium.mass * (W - medium.potential) / HBAR**2


def transverse_wavenumber(reference: Medium, ctx: WaveContext):
    """Wavenumber component along the interfaces, conserved across a stack.

    For oblique incidence it is fixed by the incidence medium ``reference``;
    for a waveguide by the cutoff; otherwise it is zero.
    """
    geom = ctx.geometry
    if geom is None:
        return 0.0
    if isinstance(geom, WaveguideGeometry):
        return geom.transverse_wavenumber
    k_in = principal_sqrt(bulk_k_squared(reference, ctx))
    return np.real(k_in) * math.sin(geom.incidence_angle)


def normal_wavenumber(medium: Medium, ctx: WaveContext, q=0.0):
    """Wavenumber normal to the layers given the conserved transverse part ``q``."""
    return principal_sqrt(bulk_k_squared(medium, ctx) - np.asarray(q) ** 2)


def wavenumber(medium: Medium, ctx: WaveContext):
    """Complex wavenumber of ``medium`` under ``ctx`` (rad/m).

    With an FTIR geometry the normal component is returned and the incidence
    side is taken to be the prism (``geometry.prism_index``); this is only
    defined for electromagnetic waves. Stacks resolve oblique incidence from
    their left lead instead, see :func:`transverse_wavenumber`.
    """
    _check_kind(medium, ctx)
    geom = ctx.geometry
    if isinstance(geom, FtirGeometry):
        if ctx.field_kind is not FieldKind.ELECTROMAGNETIC:
            raise ConfigurationError(
                "FtirGeometry indices are optical; acoustic oblique incidence "
                "needs a Stack whose left lead sets the transverse wavenumber"
            )
        q = geom.prism_index * np.asarray(ctx.omega, dtype=float) / C * math.sin(geom.incidence_angle)
        return normal_wavenumber(medium, ctx, q)
    return normal_wavenumber(medium, ctx, transverse_wavenumber(medium, ctx))


def ftir_transverse_wavenumber(geom: FtirGeometry, omega):
    """Gap wavenumber normal to the prism faces, ``(w/c) sqrt(n2**2 - n1**2 sin**2 a)``."""
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise DomainError("angular frequency must be > 0")
    n1, n2 = geom.prism_index, geom.gap_index
    s = math.sin(geom.incidence_angle)
    return n2 * w / C * principal_sqrt(1.0 - (n1 / n2) ** 2 * s * s)


def waveguide_wavenumber(geom: WaveguideGeometry, omega):
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise DomainError("angular frequency must be > 0")
    return principal_sqrt(w**2 - geom.cutoff_frequency**2) / C


def is_evanescent(k, tol: float = EVANESCENT_TOL):
    """True where ``k`` is purely imaginary to relative tolerance ``tol``."""
    k = np.asarray(k, dtype=complex)
    out = np.abs(k.real) <= tol * np.abs(k)
    return bool(out) if out.ndim == 0 else out


def is_propagating(k, tol: float = EVANESCENT_TOL):
    """True where ``k`` is real and nonzero (a lead able to carry flux)."""
    k = np.asarray(k, dtype=complex)
    out = (np.abs(k.imag) <= tol * np.abs(k)) & (np.abs(k) > 0)
    return bool(out) if out.ndim == 0 else out


def opaqueness(k, length):
    """Opaqueness ``kappa * d`` of an evanescent region; opaque when >= 1."""
    if not np.all(is_evanescent(k)):
        raise DomainError(f"opaqueness needs a purely imaginary wavenumber, got {k}")
    return np.imag(k) * length


def is_opaque(k, length) -> bool:
    return bool(np.all(opaqueness(k, length) >= 1.0))
