import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tunnelsim.constants import C, ELECTRON_MASS, EPS0, EV, HBAR
from tunnelsim.dispersion import (
    Acoustic,
    Electromagnetic,
    FieldKind,
    FtirGeometry,
    Quantum,
    WaveContext,
    wavenumber,
)
from tunnelsim.errors import DomainError
from tunnelsim.scatter import interface_amplitudes
from tunnelsim.virtuality import (
    assess_region,
    einstein_residual,
    energy_density,
    interface_reflectance,
    localization_bound,
    total_energy,
)

finite = dict(allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("eps_r, e_field, expected", [(-1.0, 1.0, -0.5 * EPS0), (1.0, 1.0, 0.5 * EPS0), (4.0, 0.0, 0.0)])
def test_energy_density(eps_r, e_field, expected):
    assert energy_density(eps_r, e_field) == pytest.approx(expected, rel=1e-15, abs=0)


@pytest.mark.parametrize("w, u, expected", [(0.7, 1.7, -1.0), (1.0, 1.0, 0.0), (2.0, 1.0, 1.0)])
def test_total_energy(w, u, expected):
    assert total_energy(w * EV, u * EV) == pytest.approx(expected * EV, abs=1e-30)


def test_total_reflection_from_imaginary_index():
    assert interface_reflectance(2j, 1.5) == pytest.approx(1.0, abs=1e-15)
    assert interface_reflectance(1.0, 1.0) == 0.0
    assert interface_reflectance(1.0, 3.0) == pytest.approx(0.25)


def test_reflectance_agrees_with_interface_amplitudes():
    r, _ = interface_amplitudes(Electromagnetic.from_index(1.0), Electromagnetic.from_index(3.0),
                                WaveContext.electromagnetic(1e10))
    assert abs(r) ** 2 == pytest.approx(interface_reflectance(1.0, 3.0), rel=1e-15)


def test_reflectance_degenerate():
    with pytest.raises(DomainError):
        interface_reflectance(1.0 + 1j, -1.0 - 1j)


@settings(max_examples=300, deadline=None)
@given(
    a=st.complex_numbers(max_magnitude=1e3, **finite),
    b=st.complex_numbers(max_magnitude=1e3, **finite),
)
def test_reflectance_symmetry(a, b):
    if abs(a + b) < 1e-6:
        return
    assert interface_reflectance(a, b) == pytest.approx(interface_reflectance(b, a), rel=1e-12)


@settings(max_examples=300, deadline=None)
@given(kappa=st.floats(1e-3, 1e3, **finite), n2=st.floats(1e-3, 1e3, **finite))
def test_imaginary_against_real_is_total_reflection(kappa, n2):
    assert abs(interface_reflectance(1j * kappa, n2) - 1.0) <= 1e-12


def test_localization_bound_one_ev():
    dx, dp = localization_bound(1.7 * EV, 0.7 * EV, ELECTRON_MASS)
    assert dp == pytest.approx(5.40e-25, rel=2e-3)
    assert dx == pytest.approx(0.195e-9, rel=3e-3)
    assert dp == HBAR / dx
    kappa = float(np.imag(wavenumber(Quantum(1.7 * EV), WaveContext.quantum(0.7 * EV))))
    assert dx == pytest.approx(1 / kappa, rel=1e-12)


def test_localization_bound_near_band_edge():
    dx0, dp0 = localization_bound(1.0 * EV, 0.9 * EV, ELECTRON_MASS)
    dx1, dp1 = localization_bound(1.0 * EV, (1 - 1e-9) * EV, ELECTRON_MASS)
    assert dx1 / dx0 == pytest.approx(1e4, rel=1e-5)
    assert dp1 / dp0 == pytest.approx(1e-4, rel=1e-5)


def test_localization_bound_requires_barrier():
    with pytest.raises(DomainError):
        localization_bound(1.0 * EV, 1.0 * EV, ELECTRON_MASS)


@settings(max_examples=300, deadline=None)
@given(
    u=st.floats(1e-3, 100.0, **finite),
    frac=st.floats(0.0, 0.999, **finite),
    m=st.floats(1e-2, 1e4, **finite),
)
def test_localization_energy_identity(u, frac, m):
    mass = m * ELECTRON_MASS
    dx, dp = localization_bound(u * EV, frac * u * EV, mass)
    gap = u * EV - frac * u * EV
    assert abs(dp**2 / (2 * mass) - gap) <= 1e-12 * gap
    assert dp == HBAR / dx


def test_einstein_residual():
    k = 3.0e7
    assert einstein_residual(HBAR * k * C, k) == pytest.approx(0.0, abs=1e-12 * (HBAR * k * C) ** 2)
    w, kappa = 2e-19, 4e6
    assert einstein_residual(w, 1j * kappa) == pytest.approx(w**2 + (HBAR * kappa * C) ** 2, rel=1e-14)
    assert einstein_residual(w, 1j * kappa) > 0
    assert einstein_residual(0.0, 0.0) == 0.0


# -- region assessments -----------------------------------------------------------

def test_quantum_barrier_is_virtual():
    ctx = WaveContext.quantum(0.7 * EV)
    rep = assess_region(Quantum(1.7 * EV), Quantum(0.0), ctx)
    assert rep.field_kind is FieldKind.QUANTUM
    assert rep.total_energy == pytest.approx(-1.0 * EV)
    assert rep.kappa == pytest.approx(5.12e9, rel=1e-3)
    assert rep.interface_reflectance == pytest.approx(1.0, abs=1e-12)
    assert rep.einstein_residual > 0
    assert rep.delta_p_min**2 / (2 * ELECTRON_MASS) == pytest.approx(1.0 * EV, rel=1e-12)
    assert rep.flags["negative_total_energy"] and rep.virtual


def test_negative_permittivity_region_is_virtual():
    ctx = WaveContext.electromagnetic(2 * math.pi * 1e14)
    rep = assess_region(Electromagnetic(eps_r=-3.0), Electromagnetic.from_index(1.5), ctx)
    assert rep.energy_density == pytest.approx(energy_density(-3.0, 1.0), rel=1e-12)
    assert rep.energy_density < 0
    assert rep.total_energy is None and "negative_total_energy" not in rep.flags
    assert rep.virtual


def test_ftir_gap_is_virtual():
    omega = 2 * math.pi * 8.33e9
    ctx = WaveContext.electromagnetic(omega, FtirGeometry(math.pi / 4, 1.6))
    rep = assess_region(Electromagnetic(), Electromagnetic.from_index(1.6), ctx)
    # the gap's effective index is imaginary: (n sin a)^2 > 1
    assert rep.energy_density == pytest.approx(energy_density(1 - (1.6 * math.sin(math.pi / 4)) ** 2, 1.0))
    assert rep.flags == {
        "evanescent": True,
        "negative_energy_density": True,
        "total_reflection": True,
        "off_shell": True,
    }


def test_acoustic_gap_is_virtual():
    water, steel = Acoustic(1480.0, 1000.0), Acoustic(5900.0, 7850.0)
    ctx = WaveContext.acoustic(2 * math.pi * 1e6, FtirGeometry(math.radians(30), 1.0, 1.0))
    rep = assess_region(steel, water, ctx)
    assert rep.virtual


def test_propagating_region_rejected():
    with pytest.raises(DomainError):
        assess_region(Quantum(0.1 * EV), Quantum(0.0), WaveContext.quantum(EV))


def test_report_text_block():
    rep = assess_region(Quantum(1.7 * EV), Quantum(0.0), WaveContext.quantum(0.7 * EV))
    text = rep.to_text(prefix="layer0.")
    lines = text.splitlines()
    assert all(" = " in line and line.startswith("layer0.") for line in lines)
    values = dict(line.split(" = ") for line in lines)
    assert values["layer0.field_kind"] == "quantum"
    assert values["layer0.flag_off_shell"] == "true"
    assert float(values["layer0.kappa_per_m"]) == pytest.approx(rep.kappa, rel=1e-12)
    em = assess_region(Electromagnetic(eps_r=-1.0), Electromagnetic(), WaveContext.electromagnetic(1e10))
    assert "total_energy_J = na" in em.to_text()
