"""Why an evanescent region behaves like a virtual particle.

Inside the barrier the kinetic energy is negative, the interface reflects
totally, the energy-momentum relation is violated, and the localization scale
1/kappa fixes a momentum uncertainty whose energy exactly bridges the gap.
"""

from tunnelsim import Quantum, WaveContext, assess_region
from tunnelsim.constants import ELECTRON_MASS, EV
from tunnelsim.scenarios import builtin, builtin_names
from tunnelsim.scenarios.run import virtuality_reports
from tunnelsim.virtuality import localization_bound

rep = assess_region(Quantum(1.7 * EV), Quantum(0.0), WaveContext.quantum(0.7 * EV))
print(rep.to_text(prefix="electron."))
dx, dp = localization_bound(1.7 * EV, 0.7 * EV, ELECTRON_MASS)
print(f"dx = {dx * 1e9:.3f} nm, dp^2/2m = {dp**2 / (2 * ELECTRON_MASS) / EV:.12f} eV")
print()
for name in builtin_names():
    for i, r in virtuality_reports(builtin(name)):
        print(f"{name:26s} layer {i}: virtual={r.virtual} R={r.interface_reflectance:.15f}")
