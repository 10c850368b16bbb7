import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tunnelsim.constants import C, ELECTRON_MASS, EV, HBAR
from tunnelsim.dispersion import (
    Acoustic,
    Electromagnetic,
    FieldKind,
    FtirGeometry,
    Quantum,
    WaveContext,
    WaveguideGeometry,
    bulk_k_squared,
    ftir_transverse_wavenumber,
    is_evanescent,
    is_opaque,
    opaqueness,
    waveguide_wavenumber,
    wavenumber,
)
from tunnelsim.errors import ConfigurationError, DomainError


# -- wavenumber ---------------------------------------------------------------

def test_vacuum_identity():
    k = wavenumber(Electromagnetic(), WaveContext.electromagnetic(C))
    assert k == pytest.approx(1.0, rel=1e-15)


def test_field_emission_barrier_kappa():
    barrier = Quantum(potential=1.7 * EV)
    k = wavenumber(barrier, WaveContext.quantum(0.7 * EV))
    kappa = math.sqrt(2 * ELECTRON_MASS * 1.0 * EV) / HBAR
    assert k.real == 0
    assert k.imag == pytest.approx(kappa, rel=1e-12)
    assert k.imag == pytest.approx(5.12e9, rel=1e-3)


def test_band_edge_is_zero():
    assert wavenumber(Quantum(potential=EV), WaveContext.quantum(EV)) == 0


def test_acoustic_wavenumber():
    k = wavenumber(Acoustic(sound_speed=1000.0, density=1000.0), WaveContext.acoustic(2 * math.pi * 1e6))
    assert k == pytest.approx(2 * math.pi * 1e3, rel=1e-14)


def test_negative_permittivity_is_evanescent():
    k = wavenumber(Electromagnetic(eps_r=-4.0), WaveContext.electromagnetic(C))
    assert k == pytest.approx(2j, rel=1e-15)


def test_lossy_medium_branch():
    k = wavenumber(Electromagnetic(eps_r=2.0 - 0.5j), WaveContext.electromagnetic(C))
    assert k.imag >= 0
    assert k**2 == pytest.approx(2.0 - 0.5j, rel=1e-14)


def test_mismatched_field_kind_rejected():
    with pytest.raises(ConfigurationError):
        wavenumber(Quantum(potential=EV), WaveContext.electromagnetic(1e9))
    with pytest.raises(ConfigurationError):
        wavenumber(Acoustic(sound_speed=340.0, density=1.2), WaveContext.quantum(EV))


def test_context_requires_one_consistent_drive():
    with pytest.raises(ConfigurationError):
        WaveContext(FieldKind.QUANTUM, omega=1.0)
    with pytest.raises(ConfigurationError):
        WaveContext(FieldKind.ELECTROMAGNETIC, omega=1.0, energy=1.0)
    with pytest.raises(ConfigurationError):
        WaveContext(FieldKind.ACOUSTIC, omega=1.0, geometry=WaveguideGeometry(1e9))


def test_context_conversions():
    ctx = WaveContext.electromagnetic(2 * math.pi * 5e9)
    assert ctx.frequency == pytest.approx(5e9)
    q = WaveContext.quantum(EV)
    assert q.drive == EV
    assert q.frequency == pytest.approx(EV / (2 * math.pi * HBAR))


def test_medium_validation():
    with pytest.raises(ConfigurationError):
        Acoustic(sound_speed=-1.0, density=1.0)
    with pytest.raises(ConfigurationError):
        Quantum(potential=0.0, mass=0.0)


# -- FTIR and waveguide -------------------------------------------------------

def test_ftir_critical_angle_gives_zero():
    geom = FtirGeometry(math.asin(1 / 1.5), prism_index=1.5)
    k = ftir_transverse_wavenumber(geom, 1e10)
    assert abs(k) < 1e-6 * 1e10 / C


def test_ftir_normal_incidence():
    geom = FtirGeometry(0.0, prism_index=1.5, gap_index=1.2)
    omega = 3e10
    assert ftir_transverse_wavenumber(geom, omega) == pytest.approx(1.2 * omega / C, rel=1e-15)


def test_ftir_sixty_degrees():
    # (n1/n2)^2 sin^2(60 deg) = 2.25 * 0.75 = 1.6875 > 1
    geom = FtirGeometry(math.radians(60), prism_index=1.5, gap_index=1.0)
    omega = 2 * math.pi * 8.33e9
    k = ftir_transverse_wavenumber(geom, omega)
    assert is_evanescent(k)
    assert k.imag == pytest.approx(math.sqrt(0.6875) * omega / C, rel=1e-12)
    assert math.sqrt(0.6875) == pytest.approx(0.8292, abs=1e-4)


def test_ftir_gap_index_prefactor():
    # standard form (omega/c) sqrt(n2^2 - n1^2 sin^2 a): the n2 prefactor matters when n2 != 1
    geom = FtirGeometry(math.radians(70), prism_index=2.4, gap_index=1.33)
    omega = 1e15
    expected = omega / C * np.sqrt(complex(1.33**2 - (2.4 * math.sin(math.radians(70))) ** 2))
    assert ftir_transverse_wavenumber(geom, omega) == pytest.approx(expected, rel=1e-13)


def test_ftir_evanescence_flips_at_critical_angle():
    n1, n2 = 1.6, 1.0
    crit = math.asin(n2 / n1)
    angles = np.linspace(crit - 0.1, crit + 0.1, 2001)
    flags = [bool(is_evanescent(ftir_transverse_wavenumber(FtirGeometry(a, n1, n2), 1e10)))
             for a in angles]
    first = flags.index(True)
    assert not any(flags[:first]) and all(flags[first + 1:])
    assert abs(angles[first] - crit) <= angles[1] - angles[0]


def test_ftir_geometry_refraction():
    g = FtirGeometry(math.radians(20), 1.5)
    assert 1.5 * math.sin(g.incidence_angle) == pytest.approx(math.sin(g.refraction_angle))
    assert FtirGeometry(math.radians(60), 1.5).refraction_angle is None
    assert FtirGeometry(0.3, 1.5).critical_angle == pytest.approx(math.asin(1 / 1.5))
    with pytest.raises(ConfigurationError):
        FtirGeometry(math.pi / 2, 1.5)


def test_wavenumber_with_ftir_context_uses_prism():
    geom = FtirGeometry(math.radians(60), 1.5)
    omega = 2e10
    k = wavenumber(Electromagnetic(), WaveContext.electromagnetic(omega, geom))
    assert k == pytest.approx(ftir_transverse_wavenumber(geom, omega), rel=1e-14)
    with pytest.raises(ConfigurationError):
        wavenumber(Acoustic(sound_speed=1480, density=1000), WaveContext.acoustic(omega, geom))


@pytest.mark.parametrize("factor, expected", [(1.0, 0.0), (math.sqrt(2), 1.0), (0.6, 0.8j)])
def test_waveguide_wavenumber(factor, expected):
    geom = WaveguideGeometry(2 * math.pi * 9.5e9)
    k = waveguide_wavenumber(geom, factor * geom.cutoff_frequency)
    assert k == pytest.approx(expected * geom.cutoff_frequency / C, abs=1e-9 * geom.cutoff_frequency / C)


def test_waveguide_from_width():
    g = WaveguideGeometry.from_width(0.02)
    assert g.cutoff_frequency == pytest.approx(math.pi * C / 0.02)


# -- evanescence and opaqueness -----------------------------------------------

@pytest.mark.parametrize("k, expected", [(5j, True), (3.0, False), (3 + 5j, False), (0j, True)])
def test_is_evanescent(k, expected):
    assert bool(is_evanescent(k)) is expected


@pytest.mark.parametrize(
    "k, d, expected",
    [(1e9j, 1e-9, 1.0), (5.12e9j, 2e-9, 10.24), (5j, 0.0, 0.0)],
)
def test_opaqueness(k, d, expected):
    assert opaqueness(k, d) == pytest.approx(expected, rel=1e-12)


def test_opaque_boundary():
    assert is_opaque(1e9j, 1e-9)
    assert not is_opaque(1e9j, 0.99e-9)


def test_opaqueness_rejects_propagating():
    with pytest.raises(DomainError):
        opaqueness(3.0 + 0.1j, 1.0)


# -- properties -----------------------------------------------------------------

finite = dict(allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(
    u=st.floats(0.0, 10.0, **finite),
    w=st.floats(1e-3, 10.0, **finite),
    m=st.floats(0.01, 10.0, **finite),
)
def test_quantum_branch_consistency(u, w, m):
    medium = Quantum(potential=u * EV, mass=m * ELECTRON_MASS)
    ctx = WaveContext.quantum(w * EV)
    k = complex(wavenumber(medium, ctx))
    k2 = 2 * medium.mass * (ctx.energy - medium.potential) / HBAR**2
    assert abs(k**2 - k2) <= 1e-12 * abs(k2) + 1e-300
    assert k.imag >= 0 and (k.imag > 0 or k.real >= 0)


@settings(max_examples=200, deadline=None)
@given(
    eps=st.floats(-20.0, 20.0, **finite),
    mu=st.floats(0.1, 5.0, **finite),
    omega=st.floats(1e3, 1e16, **finite),
)
def test_em_branch_consistency(eps, mu, omega):
    medium = Electromagnetic(eps_r=eps, mu_r=mu)
    ctx = WaveContext.electromagnetic(omega)
    k = complex(wavenumber(medium, ctx))
    k2 = complex(bulk_k_squared(medium, ctx))
    assert k2 == pytest.approx(eps * mu * (omega / C) ** 2, rel=1e-14)
    assert abs(k**2 - k2) <= 1e-12 * abs(k2) + 1e-300
    assert k.imag >= 0


def test_quantum_kappa_decreases_to_band_edge():
    u = 1.0 * EV
    medium = Quantum(potential=u)
    w = np.linspace(0.01, 1.0, 400) * u
    kappa = np.imag(wavenumber(medium, WaveContext.quantum(w)))
    assert np.all(np.diff(kappa) < 0)
    assert kappa[-1] == 0


def test_purity_bit_identical():
    medium = Quantum(potential=1.7 * EV)
    ctx = WaveContext.quantum(np.linspace(0.1, 3.0, 50) * EV)
    a, b = wavenumber(medium, ctx), wavenumber(medium, ctx)
    assert np.array_equal(a, b)
