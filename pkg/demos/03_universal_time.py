"""Tunneling times across fifteen orders of magnitude scale with the carrier period.

Each measured time is listed next to the inverse carrier frequency. Their ratio
A stays of order one from acoustic milliseconds down to electronic femtoseconds.
For electrons the period is h/W, which the first lines compute directly.
"""

from tunnelsim import WaveContext, universal_time
from tunnelsim.constants import EV
from tunnelsim.scenarios import render_table1, table1_report

for w in (0.7, 54.39):
    print(f"h/W at {w} eV = {universal_time(WaveContext.quantum(w * EV)):.3e} s")
print()
print(render_table1(table1_report()))
