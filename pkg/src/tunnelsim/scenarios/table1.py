"""Measured tunneling times against ``T = 1/nu`` for phonons, photons and electrons.

The measured values are literature data and are never recomputed. Rows with
a desk-scale analogue in the builtin library also carry the phase time this
package computes for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .library import builtin
from .run import probe_phase_time


@dataclass(frozen=True)
class Table1Row:
    barrier: str
    reference: str
    tau_measured: float
    tau_text: str
    period: Optional[float]
    period_text: str
    scenario: Optional[str] = None
    tau_simulated: Optional[float] = None
    upper_bound: bool = False

    @property
    def factor_a(self) -> Optional[float]:
        if self.period is None:
            return None
        return self.tau_measured / self.period

    @property
    def factor_a_simulated(self) -> Optional[float]:
        if self.period is None or self.tau_simulated is None:
            return None
        return self.tau_simulated / self.period


# (barrier, reference, tau [s], tau as printed, T [s] or None, T as printed, builtin scenario)
# the ionization row is an upper bound with no carrier period
MEASURED = (
    ("frustrated total reflection at double prisms", "Ref. 18", 117e-12, "117 ps", 120e-12, "120 ps", "ftir-microwave"),
    ("frustrated total reflection at double prisms", "Ref. 23", 30e-15, "30 fs", 11.3e-15, "11.3 fs", "ftir-infrared"),
    ("frustrated total reflection at double prisms", "Ref. 24", 87e-12, "87 ps", 100e-12, "100 ps", "ftir-10ghz"),
    ("photonic lattice", "Ref. 32", 2.13e-15, "2.13 fs", 2.34e-15, "2.34 fs", "photonic-lattice-702nm"),
    ("photonic lattice", "Ref. 37", 2.7e-15, "2.7 fs", 2.7e-15, "2.7 fs", "photonic-lattice-810nm"),
    ("undersized waveguide", "Ref. 28", 130e-12, "130 ps", 115e-12, "115 ps", "undersized-waveguide"),
    ("electron field-emission tunneling", "Ref. 36", 7e-15, "7 fs", 6e-15, "6 fs", "electron-field-emission"),
    ("electron ionization tunneling", "Ref. 19", 6e-18, "≤ 6 as", None, "? as", None),
    ("acoustic (phonon) tunneling", "Ref. 25", 0.8e-6, "0.8 μs", 1e-6, "1 μs", "acoustic-1mhz"),
    ("acoustic (phonon) tunneling", "Ref. 26", 0.9e-3, "0.9ms", 1e-3, "1ms", "acoustic-1khz"),
)


def table1_report(simulate: bool = True) -> list:
    rows = []
    for barrier, ref, tau, tau_text, period, period_text, scenario in MEASURED:
        simulated = probe_phase_time(builtin(scenario)) if simulate and scenario else None
        rows.append(Table1Row(barrier, ref, tau, tau_text, period, period_text, scenario,
                              simulated, upper_bound=tau_text.startswith("≤")))
    return rows


def render_table1(rows) -> str:
    """Fixed-width text rendering."""
    head = f"{'barrier':<46} {'ref':<8} {'tau':>8} {'T=1/nu':>8} {'A':>6} {'tau_sim':>11} {'A_sim':>7}"
    lines = [head, "-" * len(head)]
    for r in rows:
        a = "-" if r.factor_a is None else f"{r.factor_a:.3f}"
        sim = "-" if r.tau_simulated is None else f"{r.tau_simulated:.3e}"
        a_sim = "-" if r.factor_a_simulated is None else f"{r.factor_a_simulated:.3f}"
        lines.append(
            f"{r.barrier:<46} {r.reference:<8} {r.tau_text:>8} {r.period_text:>8} {a:>6} {sim:>11} {a_sim:>7}"
        )
    return "\n".join(lines) + "\n"
