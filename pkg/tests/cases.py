"""Random lossless configurations shared by the property and acceptance tests."""

import math

import numpy as np

from tunnelsim.constants import C, ELECTRON_MASS, EV
from tunnelsim.dispersion import (
    Acoustic,
    Electromagnetic,
    FieldKind,
    FtirGeometry,
    Quantum,
    is_evanescent,
)
from tunnelsim.scatter import Layer, Stack, barrier_wavenumber

KINDS = (FieldKind.QUANTUM, FieldKind.ELECTROMAGNETIC, FieldKind.ACOUSTIC)


def _log_uniform(rng, lo, hi):
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def single_barrier(rng, kind, kappa_d=None):
    """One evanescent layer between identical leads.

    Returns ``(barrier, leads, ctx, stack, kappa_d)``. Electromagnetic cases
    alternate between negative permittivity and a frustrated-total-reflection
    gap; acoustic evanescence always comes from oblique incidence on a faster
    medium.
    """
    if kappa_d is None:
        kappa_d = _log_uniform(rng, 0.1, 50.0)
    if kind is FieldKind.QUANTUM:
        u = _log_uniform(rng, 0.05, 10.0) * EV
        w = rng.uniform(0.02, 0.98) * u
        leads = Quantum(0.0, _log_uniform(rng, 0.05, 2.0) * ELECTRON_MASS)
        barrier = Quantum(u, _log_uniform(rng, 0.05, 2.0) * ELECTRON_MASS)
        drive, geom = w, None
    elif kind is FieldKind.ELECTROMAGNETIC:
        drive = 2 * math.pi * _log_uniform(rng, 1e8, 1e15)
        n1 = rng.uniform(1.0, 3.5)
        if rng.random() < 0.5:
            leads = Electromagnetic.from_index(n1)
            barrier = Electromagnetic(eps_r=-_log_uniform(rng, 0.01, 50.0), mu_r=rng.uniform(0.5, 2.0))
            geom = None
        else:
            n1 = max(n1, 1.3)
            n2 = rng.uniform(1.0, n1 / 1.15)
            crit = math.asin(n2 / n1)
            alpha = rng.uniform(crit + 0.02, math.radians(85))
            leads = Electromagnetic.from_index(n1)
            barrier = Electromagnetic.from_index(n2)
            geom = FtirGeometry(alpha, n1, n2)
    else:
        drive = 2 * math.pi * _log_uniform(rng, 1e2, 1e7)
        c1 = rng.uniform(300.0, 1500.0)
        c2 = c1 * rng.uniform(1.3, 6.0)
        crit = math.asin(c1 / c2)
        alpha = rng.uniform(crit + 0.02, math.radians(85))
        leads = Acoustic(c1, _log_uniform(rng, 1.0, 2000.0))
        barrier = Acoustic(c2, _log_uniform(rng, 1.0, 8000.0))
        # only the angle matters for acoustic stacks; the lead sets the transverse wavenumber
        geom = FtirGeometry(alpha, 1.0, 1.0)
    probe = Stack(leads, (Layer(barrier, 1.0),), leads, geom)
    k = barrier_wavenumber(probe, 0, drive)
    assert is_evanescent(k) and k != 0
    d = kappa_d / float(np.imag(k))
    stack = probe.with_thickness(0, d)
    return stack.layers[0], leads, stack.context(drive), stack, kappa_d


def _em_medium(rng, evanescent_ok=True):
    if evanescent_ok and rng.random() < 0.3:
        return Electromagnetic(eps_r=-_log_uniform(rng, 0.01, 20.0), mu_r=rng.uniform(0.5, 2.0))
    return Electromagnetic(eps_r=rng.uniform(1.0, 12.0), mu_r=rng.uniform(0.5, 2.0))


def lossless_stack(rng, kind=None, max_layers=8):
    """Random lossless multilayer with distinct propagating leads.

    Returns ``(stack, drive)``. Layers mix propagating and evanescent media;
    thicknesses are drawn per layer on a scale of its local wavelength or
    decay length (up to ``kappa d = 20``).
    """
    kind = KINDS[rng.integers(3)] if kind is None else kind
    n_layers = int(rng.integers(1, max_layers + 1))
    geom = None
    if kind is FieldKind.QUANTUM:
        w = _log_uniform(rng, 0.01, 5.0) * EV
        drive = w
        mass = lambda: _log_uniform(rng, 0.05, 2.0) * ELECTRON_MASS  # noqa: E731
        left = Quantum(rng.uniform(-1.0, 0.9) * w, mass())
        right = Quantum(rng.uniform(-1.0, 0.9) * w, mass())
        layers = [Quantum(rng.uniform(0.0, 3.0) * w, mass()) for _ in range(n_layers)]
    elif kind is FieldKind.ELECTROMAGNETIC:
        drive = 2 * math.pi * _log_uniform(rng, 1e8, 1e15)
        left = _em_medium(rng, evanescent_ok=False)
        if rng.random() < 0.4:
            geom = FtirGeometry(rng.uniform(0.0, math.radians(80)), float(np.real(left.index)))
        # the right lead must stay propagating for the conserved transverse wavenumber
        n_min = float(np.real(left.index)) * (math.sin(geom.incidence_angle) if geom else 0.0)
        lo = max(1.0, 1.02 * n_min)
        n_right = rng.uniform(lo, lo + 3.0)
        right = Electromagnetic.from_index(n_right)
        layers = [_em_medium(rng) for _ in range(n_layers)]
    else:
        drive = 2 * math.pi * _log_uniform(rng, 1e2, 1e7)
        left = Acoustic(rng.uniform(300.0, 3000.0), _log_uniform(rng, 1.0, 8000.0))
        if rng.random() < 0.5:
            geom = FtirGeometry(rng.uniform(0.0, math.radians(80)), 1.0, 1.0)
        s = math.sin(geom.incidence_angle) if geom else 0.0
        c_max = left.sound_speed / s / 1.02 if s > 0 else 6000.0
        right = Acoustic(rng.uniform(200.0, min(6000.0, c_max)), _log_uniform(rng, 1.0, 8000.0))
        layers = [Acoustic(rng.uniform(200.0, 8000.0), _log_uniform(rng, 1.0, 8000.0))
                  for _ in range(n_layers)]

    probe = Stack(left, tuple(Layer(m, 1.0) for m in layers), right, geom)
    out = []
    for i, m in enumerate(layers):
        k = complex(barrier_wavenumber(probe, i, drive))
        scale = 1.0 / abs(k) if abs(k) > 0 else C / drive
        out.append(Layer(m, scale * rng.uniform(0.0, 20.0)))
    return Stack(left, tuple(out), right, geom), drive
