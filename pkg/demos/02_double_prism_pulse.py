"""A microwave pulse crossing the air gap between two perspex prisms.

The transmitted and reflected beams of a symmetric double prism leave at the
same instant: no time is spent inside the evanescent gap itself. The delay of
the transmitted peak matches the phase time at the carrier, and the match
improves as the pulse narrows in frequency.
"""

import math

import numpy as np

from tunnelsim import Electromagnetic, FtirGeometry, Layer, Stack, synthesize, transmission_scan
from tunnelsim.pulse import carrier_phase_time, pulse_experiment, symmetric_ftir_experiment
from tunnelsim.scatter import barrier_wavenumber

carrier, n, angle = 8.33e9, 1.6, math.pi / 4
prism = Electromagnetic.from_index(n)
probe = Stack(prism, (Layer(Electromagnetic(), 1.0),), prism, FtirGeometry(angle, n))
kappa = float(np.imag(barrier_wavenumber(probe, 0, 2 * math.pi * carrier)))
stack = probe.with_thickness(0, 3.0 / kappa)
print(f"gap {stack.layers[0].thickness * 1e3:.1f} mm, kappa*d = 3, period {1e12 / carrier:.1f} ps")

pulse = synthesize(carrier, 2e-9, 2**14, 160e-9)
rep = symmetric_ftir_experiment(stack.layers[0], prism, pulse)
print(f"transmitted peak {rep.transmitted_peak * 1e9:.4f} ns, reflected peak {rep.reflected_peak * 1e9:.4f} ns")
print(f"difference {abs(rep.t_perp) / rep.carrier_period:.1e} of a period")

print(f"{'width':>7} {'peak delay (ps)':>16} {'phase time (ps)':>16} {'error':>7}")
for width in (1e-9, 2e-9, 4e-9):
    p = synthesize(carrier, width, 2**14, 80 * width)
    spec = transmission_scan(stack, p.frequency_grid())
    delay = pulse_experiment(stack, p, spectrum=spec).transmitted_delay
    tau = carrier_phase_time(spec, carrier)
    print(f"{width * 1e9:5.0f}ns {delay * 1e12:16.3f} {tau * 1e12:16.3f} {abs(delay - tau) / tau:7.2%}")
