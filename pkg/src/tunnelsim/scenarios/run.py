"""Scenario execution and report emission."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..dispersion import is_evanescent
from ..errors import TunnelSimError
from ..pulse import ArrivalReport, pulse_experiment, synthesize, timeseries_csv
from ..scatter import ScatterSpectrum, barrier_wavenumber, transmission_scan
from ..timing import (
    HartmanScan,
    PhaseSpectrum,
    TimingResult,
    analyze,
    hartman_scan,
    phase_time,
    transmission_phase,
)
from ..virtuality import assess_region
from .config import ScenarioConfig

CSV_COLUMNS = (
    "drive_value_si", "re_t", "im_t", "abs_t_squared", "abs_r_squared",
    "phase_unwrapped_rad", "tau_s",
)


class ScenarioError(TunnelSimError):
    """A module error raised while running a named scenario."""

    def __init__(self, scenario: str, cause: Exception):
        super().__init__(f"scenario {scenario!r}: {cause}")
        self.scenario = scenario
        self.cause = cause


@dataclass
class ScenarioReport:
    config: ScenarioConfig
    spectrum: Optional[ScatterSpectrum] = None
    phase: Optional[PhaseSpectrum] = None
    timing: Optional[TimingResult] = None
    hartman: Optional[HartmanScan] = None
    arrival: Optional[ArrivalReport] = None
    virtuality: list = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.config.name

    @property
    def probe_tau(self) -> Optional[float]:
        if self.timing is None:
            return None
        return float(self.timing.tau[self.config.probe_index()])


def probe_phase_time(cfg: ScenarioConfig, rel_step: float = 1e-4) -> float:
    """Phase time at the probe drive from a 5-point local scan."""
    x0 = cfg.probe_drive()
    grid = x0 * (1.0 + rel_step * np.linspace(-1.0, 1.0, 5))
    try:
        spec = transmission_scan(cfg.stack(), grid)
        return float(phase_time(transmission_phase(spec))[2])
    except TunnelSimError as exc:
        raise ScenarioError(cfg.name, exc) from exc


def evanescent_layers(cfg: ScenarioConfig, drive: Optional[float] = None) -> list:
    """Indices of layers whose normal wavenumber is purely imaginary at ``drive``."""
    drive = cfg.probe_drive() if drive is None else drive
    stack = cfg.stack()
    out = []
    for i, layer in enumerate(stack.layers):
        k = barrier_wavenumber(stack, i, drive)
        if layer.thickness > 0 and k != 0 and is_evanescent(k):
            out.append(i)
    return out


def virtuality_reports(cfg: ScenarioConfig) -> list:
    """One report per evanescent layer, evaluated at the probe drive."""
    stack = cfg.stack()
    drive = cfg.probe_drive()
    ctx = stack.context(drive)
    reports = []
    seen = {}
    for i in evanescent_layers(cfg, drive):
        medium = stack.layers[i].medium
        if medium not in seen:
            seen[medium] = assess_region(medium, stack.right_lead, ctx, incidence=stack.left_lead)
        reports.append((i, seen[medium]))
    return reports


def run_scenario(cfg: ScenarioConfig) -> ScenarioReport:
    """Run the requested analyses (scatter -> phase time -> pulse; hartman, virtuality)."""
    report = ScenarioReport(cfg)
    wanted = set(cfg.analyses)
    try:
        stack = cfg.stack()
        if wanted & {"scatter", "phasetime"}:
            report.spectrum = transmission_scan(stack, cfg.grid.values())
            if cfg.grid.points >= 3:
                report.phase = transmission_phase(report.spectrum)
                report.timing = analyze(report.spectrum)
        if "hartman" in wanted:
            h = cfg.hartman
            probe = cfg.probe_index() if h.probe is None else h.probe
            report.hartman = hartman_scan(stack, h.layer, h.lengths, cfg.grid.values(),
                                          probe=probe, threshold=h.threshold)
        if "pulse" in wanted:
            p = cfg.pulse
            pulse = synthesize(p.carrier, p.width, p.samples, p.span)
            report.arrival = pulse_experiment(stack, pulse)
        if "virtuality" in wanted:
            report.virtuality = virtuality_reports(cfg)
    except TunnelSimError as exc:
        raise ScenarioError(cfg.name, exc) from exc
    return report


def _fmt(v: float) -> str:
    return f"{v:.12e}"


def emit_csv(report: ScenarioReport) -> str:
    """Spectrum table with a fixed column order and 12-digit mantissas."""
    spec = report.spectrum
    if spec is None:
        raise ValueError(f"scenario {report.name!r} has no spectrum to emit")
    n = len(spec.grid)
    phase = report.phase.phase if report.phase is not None else np.full(n, math.nan)
    tau = report.timing.tau if report.timing is not None else np.full(n, math.nan)
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in zip(spec.grid, spec.t.real, spec.t.imag, np.abs(spec.t) ** 2,
                   np.abs(spec.r) ** 2, phase, tau):
        buf.write(",".join(_fmt(float(v)) for v in row) + "\n")
    return buf.getvalue()


def emit_hartman_csv(scan: HartmanScan) -> str:
    buf = io.StringIO()
    buf.write("length_m,opaqueness,tau_s,transmittance,saturated\n")
    for d, kd, tau, tr, sat in zip(scan.lengths, scan.opaqueness, scan.tau,
                                   scan.transmittance, scan.saturated):
        buf.write(f"{_fmt(d)},{_fmt(kd)},{_fmt(tau)},{_fmt(tr)},{str(bool(sat)).lower()}\n")
    return buf.getvalue()


def emit_timeseries_csv(report: ScenarioReport) -> str:
    a = report.arrival
    if a is None:
        raise ValueError(f"scenario {report.name!r} has no pulse run")
    return timeseries_csv(a.transmitted, a.reflected)


def emit_arrival_text(arrival: ArrivalReport) -> str:
    rows = [
        ("transmitted_peak_s", arrival.transmitted_peak),
        ("reflected_peak_s", arrival.reflected_peak),
        ("t_perp_s", arrival.t_perp),
        ("cross_correlation_delay_s", arrival.cross_correlation_delay),
        ("reshaping", arrival.reshaping),
        ("carrier_period_s", arrival.carrier_period),
    ]
    for side, methods in arrival.arrivals.items():
        for method, value in methods.items():
            rows.append((f"{side}_{method}_s", value))
    return "".join(f"{k} = {_fmt(float(v))}\n" for k, v in rows)


def emit_virtuality_text(report: ScenarioReport) -> str:
    out = [f"scenario = {report.name}\n", f"evanescent_layers = {len(report.virtuality)}\n"]
    for i, v in report.virtuality:
        out.append(v.to_text(prefix=f"layer{i}."))
    return "".join(out)
