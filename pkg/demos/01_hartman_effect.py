"""Hartman effect: the phase time of an opaque barrier stops growing with length.

An electron at half the barrier height meets a 1 eV step of increasing width.
Transmission collapses exponentially while the phase time settles at hbar/W.
"""

import numpy as np

from tunnelsim import Layer, Quantum, Stack, WaveContext, hartman_scan, wavenumber
from tunnelsim.constants import EV, HBAR

u = 1.0 * EV
w = u / 2
kappa = float(np.imag(wavenumber(Quantum(u), WaveContext.quantum(w))))
stack = Stack(Quantum(0.0), (Layer(Quantum(u), 1 / kappa),))

kd = np.array([0.25, 0.5, 1, 2, 3, 5, 8, 12, 16])
grid = w * (1 + np.linspace(-1e-4, 1e-4, 5))
scan = hartman_scan(stack, 0, kd / kappa, grid)

print(f"kappa = {kappa:.4g} 1/m, hbar/W = {HBAR / w * 1e15:.4f} fs")
print(f"{'kappa*d':>8} {'d (nm)':>8} {'|t|^2':>11} {'tau (fs)':>9}")
for x, d, t2, tau in zip(scan.opaqueness, scan.lengths, scan.transmittance, scan.tau):
    print(f"{x:8.2f} {d * 1e9:8.3f} {t2:11.3e} {tau * 1e15:9.4f}")
print(f"saturated value {scan.tau_saturated * 1e15:.4f} fs, independent of d once kappa*d >~ 3")
