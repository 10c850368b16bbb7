"""Observability predicates for evanescent and tunneling modes.

Inside a barrier the mode has a negative energy density (electromagnetic),
a negative total energy (particles), is totally reflected by any receiver
with a real index, needs a momentum uncertainty of at least ``hbar*kappa``
to be localised, and is off the ``W**2 = (hbar k c)**2`` shell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .constants import C, EPS0, HBAR
from .dispersion import (
    FieldKind,
    Medium,
    Quantum,
    WaveContext,
    is_evanescent,
    normal_wavenumber,
    principal_sqrt,
    bulk_k_squared,
    transverse_wavenumber,
)
from .errors import DomainError


def energy_density(eps_r: float, e_field: float) -> float:
    """Electric energy density ``eps0 * eps_r * E**2 / 2`` (J/m^3)."""
    return 0.5 * EPS0 * eps_r * e_field**2


def total_energy(w_kin: float, potential: float) -> float:
    return w_kin - potential


def interface_reflectance(n1: complex, n2: complex) -> float:
    """``|n2 - n1|**2 / |n2 + n1|**2``."""
    den = abs(n2 + n1) ** 2
    if den == 0:
        raise DomainError("n2 = -n1: reflectance undefined")
    return abs(n2 - n1) ** 2 / den


def localization_bound(potential: float, w_kin: float, mass: float):
    """Localisation length ``1/kappa`` and minimum momentum spread ``hbar*kappa``."""
    if not potential > w_kin:
        raise DomainError("no forbidden region: U <= W_kin")
    dx = HBAR / math.sqrt(2.0 * mass * (potential - w_kin))
    return dx, HBAR / dx


def einstein_residual(w: float, k: complex) -> float:
    """``W**2 - Re((hbar k)**2) c**2``: zero on shell, positive for imaginary ``k``."""
    return w * w - ((HBAR * k) ** 2).real * C**2


@dataclass(frozen=True)
class VirtualityReport:
    field_kind: FieldKind
    kappa: float
    energy_density: float
    total_energy: Optional[float]
    interface_reflectance: float
    delta_x: float
    delta_p_min: float
    einstein_residual: float
    flags: dict = field(default_factory=dict)

    @property
    def virtual(self) -> bool:
        return all(self.flags.values())

    def to_text(self, prefix: str = "") -> str:
        """Flat ``key = value`` block."""
        rows = [
            ("field_kind", self.field_kind.value),
            ("kappa_per_m", self.kappa),
            ("energy_density_J_per_m3", self.energy_density),
            ("total_energy_J", self.total_energy),
            ("interface_reflectance", self.interface_reflectance),
            ("delta_x_m", self.delta_x),
            ("delta_p_min_kg_m_per_s", self.delta_p_min),
            ("einstein_residual_J2", self.einstein_residual),
        ]
        rows += [(f"flag_{name}", value) for name, value in self.flags.items()]
        out = []
        for key, value in rows:
            if isinstance(value, float):
                value = f"{value:.12e}"
            elif value is None:
                value = "na"
            elif isinstance(value, bool):
                value = str(value).lower()
            out.append(f"{prefix}{key} = {value}")
        return "\n".join(out) + "\n"


def _reference_wavenumber(receiver: Medium, ctx: WaveContext):
    if ctx.field_kind is FieldKind.ELECTROMAGNETIC:
        return ctx.omega / C
    return principal_sqrt(bulk_k_squared(receiver, ctx)).real


def assess_region(region: Medium, receiver: Medium, ctx: WaveContext,
                  incidence: Optional[Medium] = None, e_field: float = 1.0) -> VirtualityReport:
    """Evaluate every predicate for ``region`` seen from a propagating ``receiver``.

    ``incidence`` is the medium fixing the transverse wavenumber under oblique
    incidence (defaults to ``receiver``). Effective indices are wavenumbers
    normalised by ``omega/c`` (electromagnetic) or by the receiver's bulk
    wavenumber (acoustic, quantum). The energy density is reported per unit
    ``E**2`` by default using the squared effective index as ``eps_r``.
    """
    incidence = receiver if incidence is None else incidence
    q = transverse_wavenumber(incidence, ctx)
    k = complex(normal_wavenumber(region, ctx, q))
    if not is_evanescent(k) or k == 0:
        raise DomainError(f"region is not evanescent (k = {k:.6g})")
    kappa = k.imag
    k_recv = complex(normal_wavenumber(receiver, ctx, q))
    k_ref = float(_reference_wavenumber(receiver, ctx))
    n_region = k / k_ref
    n_receiver = k_recv / k_ref
    eps_equiv = (n_region**2).real
    u = energy_density(eps_equiv, e_field)
    refl = interface_reflectance(n_region, n_receiver)

    if isinstance(region, Quantum):
        w_kin = float(ctx.energy)
        w_total = total_energy(w_kin, region.potential)
        dx, dp = localization_bound(region.potential, w_kin, region.mass)
        photon_like_energy = w_kin
    else:
        w_total = None
        dx = 1.0 / kappa
        dp = HBAR / dx
        photon_like_energy = HBAR * float(ctx.omega)
    resid = einstein_residual(photon_like_energy, k)

    flags = {
        "evanescent": True,
        "negative_energy_density": u < 0,
        "total_reflection": abs(refl - 1.0) <= 1e-12,
        "off_shell": resid > 0,
    }
    if w_total is not None:
        flags["negative_total_energy"] = w_total < 0
    return VirtualityReport(
        field_kind=ctx.field_kind,
        kappa=kappa,
        energy_density=u,
        total_energy=w_total,
        interface_reflectance=refl,
        delta_x=dx,
        delta_p_min=dp,
        einstein_residual=resid,
        flags=flags,
    )
