"""A quarter-wave Bragg mirror as a one-dimensional photonic band gap.

Inside the gap the transmission falls exponentially with the number of periods
and the phase time at mid-gap saturates, like a single opaque barrier.
"""

import numpy as np

from tunnelsim import Electromagnetic, Layer, Stack, stack_scatter, transmission_scan
from tunnelsim.constants import C
from tunnelsim.dispersion import WaveContext
from tunnelsim.timing import analyze

lam = 800e-9
omega = 2 * np.pi * C / lam
hi, lo = Electromagnetic.from_index(2.0), Electromagnetic.from_index(1.5)
cell = (Layer(hi, lam / 8), Layer(lo, lam / 6))
air = Electromagnetic()

print(f"{'periods':>7} {'|t|^2':>10} {'tau (fs)':>9}")
for periods in (2, 4, 8, 16, 32):
    stack = Stack(air, cell * periods, air)
    grid = omega * (1 + np.linspace(-1e-4, 1e-4, 5))
    timing = analyze(transmission_scan(stack, grid))
    t = stack_scatter(stack, WaveContext.electromagnetic(omega)).t
    print(f"{periods:7d} {abs(t) ** 2:10.3e} {timing.tau[2] * 1e15:9.3f}")
print(f"carrier period {lam / C * 1e15:.3f} fs")
