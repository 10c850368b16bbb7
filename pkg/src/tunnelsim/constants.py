"""Physical constants (CODATA 2018, exact where SI defines them) and unit factors.

Everything inside the package is SI. The unit factors below are only used
at the configuration boundary.
"""

import scipy.constants as _sc

C = _sc.c
H = _sc.h
HBAR = _sc.hbar
EPS0 = _sc.epsilon_0
MU0 = _sc.mu_0
ELECTRON_MASS = _sc.m_e
ELEMENTARY_CHARGE = _sc.e

EV = _sc.electron_volt
MEV = 1e-3 * EV
KHZ = 1e3
MHZ = 1e6
GHZ = 1e9
THZ = 1e12
