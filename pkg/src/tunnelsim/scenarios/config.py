"""Scenario documents: a strict YAML schema with unit-suffixed quantities.

Every dimensional value is a string ``"<number> <unit>"``; unknown keys are
rejected. Loading converts everything to SI; :func:`dump_scenario` writes SI
values back so that ``load(dump(load(text)))`` reproduces the same config.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np
import yaml

from ..constants import ELECTRON_MASS, EV, GHZ, KHZ, MEV, MHZ, THZ
from ..dispersion import (
    Acoustic,
    Electromagnetic,
    FieldKind,
    FtirGeometry,
    Medium,
    Quantum,
    WaveguideGeometry,
)
from ..errors import ConfigurationError
from ..scatter import Layer, Stack

ANALYSES = ("scatter", "phasetime", "hartman", "pulse", "virtuality")

# unit -> (dimension, factor to SI)
UNITS = {
    "m": ("length", 1.0), "km": ("length", 1e3), "cm": ("length", 1e-2),
    "mm": ("length", 1e-3), "um": ("length", 1e-6), "nm": ("length", 1e-9),
    "pm": ("length", 1e-12),
    "s": ("time", 1.0), "ms": ("time", 1e-3), "us": ("time", 1e-6),
    "ns": ("time", 1e-9), "ps": ("time", 1e-12), "fs": ("time", 1e-15),
    "as": ("time", 1e-18),
    "Hz": ("frequency", 1.0), "kHz": ("frequency", KHZ), "MHz": ("frequency", MHZ),
    "GHz": ("frequency", GHZ), "THz": ("frequency", THZ),
    "rad/s": ("angular_frequency", 1.0),
    "J": ("energy", 1.0), "eV": ("energy", EV), "meV": ("energy", MEV),
    "keV": ("energy", 1e3 * EV),
    "rad": ("angle", 1.0), "deg": ("angle", math.pi / 180),
    "m/s": ("speed", 1.0), "km/s": ("speed", 1e3),
    "kg/m3": ("density", 1.0), "g/cm3": ("density", 1e3),
    "kg": ("mass", 1.0), "m_e": ("mass", ELECTRON_MASS),
}
SI_UNIT = {
    "length": "m", "time": "s", "frequency": "Hz", "angular_frequency": "rad/s",
    "energy": "J", "angle": "rad", "speed": "m/s", "density": "kg/m3", "mass": "kg",
}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z_/0-9]+)\s*$")


class ScenarioValidationError(ConfigurationError):
    """A scenario document that does not satisfy the schema."""


def parse_quantity(value, dimensions, where: str) -> tuple:
    """Parse ``"<number> <unit>"``; returns ``(si_value, dimension)``."""
    if isinstance(dimensions, str):
        dimensions = (dimensions,)
    if not isinstance(value, str):
        raise ScenarioValidationError(
            f"{where}: expected a quantity with a unit suffix, got {value!r}"
        )
    m = _QUANTITY.match(value)
    if not m:
        raise ScenarioValidationError(f"{where}: cannot parse quantity {value!r}")
    number, unit = float(m.group(1)), m.group(2)
    if unit not in UNITS:
        raise ScenarioValidationError(f"{where}: unknown unit {unit!r}")
    dim, factor = UNITS[unit]
    angular = dim == "frequency" and "angular_frequency" in dimensions
    if dim not in dimensions and not angular:
        raise ScenarioValidationError(
            f"{where}: unit {unit!r} measures {dim}, expected {' or '.join(dimensions)}"
        )
    if angular:
        return 2 * math.pi * number * factor, "angular_frequency"
    return number * factor, dim


def format_quantity(value: float, dimension: str) -> str:
    return f"{float(value)!r} {SI_UNIT[dimension]}"


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioValidationError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioValidationError(f"{where}: expected an integer, got {value!r}")
    return value


def _mapping(doc, where: str, required=(), optional=()) -> dict:
    if not isinstance(doc, dict):
        raise ScenarioValidationError(f"{where}: expected a mapping")
    unknown = set(doc) - set(required) - set(optional)
    if unknown:
        raise ScenarioValidationError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = [k for k in required if k not in doc]
    if missing:
        raise ScenarioValidationError(f"{where}: missing key(s) {missing}")
    return doc


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    points: int
    quantity: str  # "angular_frequency" or "energy"

    def __post_init__(self):
        if self.points < 2:
            raise ScenarioValidationError("grid: need at least 2 points")
        if not self.stop > self.start:
            raise ScenarioValidationError("grid: stop must be greater than start")
        if not self.start > 0:
            raise ScenarioValidationError("grid: start must be positive")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class PulseSpec:
    carrier: float
    width: float
    samples: int
    span: float


@dataclass(frozen=True)
class HartmanSpec:
    layer: int
    lengths: tuple
    probe: Optional[int] = None
    threshold: float = 0.01


@dataclass(frozen=True)
class LayerGroup:
    repeat: int
    layers: tuple


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    field_kind: FieldKind
    left_lead: Medium
    right_lead: Medium
    grid: GridSpec
    analyses: tuple
    layers: tuple = ()
    geometry: Optional[Union[FtirGeometry, WaveguideGeometry]] = None
    pulse: Optional[PulseSpec] = None
    hartman: Optional[HartmanSpec] = None
    probe: Optional[float] = None
    description: str = ""
    provenance: str = ""

    def flat_layers(self) -> tuple:
        return _flatten(self.layers)

    def stack(self) -> Stack:
        return Stack(self.left_lead, self.flat_layers(), self.right_lead, self.geometry)

    def probe_index(self) -> int:
        grid = self.grid.values()
        if self.probe is None:
            return grid.size // 2
        return int(np.argmin(np.abs(grid - self.probe)))

    def probe_drive(self) -> float:
        """Drive value at which single-point results (tau, virtuality) are reported."""
        if self.probe is not None:
            return self.probe
        return float(self.grid.values()[self.probe_index()])

    def with_grid(self, grid: GridSpec) -> "ScenarioConfig":
        return replace(self, grid=grid)


def _flatten(entries) -> tuple:
    out = []
    for e in entries:
        if isinstance(e, LayerGroup):
            out.extend(_flatten(e.layers) * e.repeat)
        else:
            out.append(e)
    return tuple(out)


# --- document -> objects -------------------------------------------------------

_MEDIUM_KEYS = {
    FieldKind.ELECTROMAGNETIC: ("index", "eps_r", "mu_r"),
    FieldKind.ACOUSTIC: ("sound_speed", "density"),
    FieldKind.QUANTUM: ("potential", "mass"),
}


def _medium(doc: dict, kind: FieldKind, where: str) -> Medium:
    if kind is FieldKind.ELECTROMAGNETIC:
        if "index" in doc and ("eps_r" in doc or "mu_r" in doc):
            raise ScenarioValidationError(f"{where}: give either index or eps_r/mu_r")
        if "index" in doc:
            return Electromagnetic.from_index(_number(doc["index"], f"{where}.index"))
        return Electromagnetic(
            _number(doc.get("eps_r", 1.0), f"{where}.eps_r"),
            _number(doc.get("mu_r", 1.0), f"{where}.mu_r"),
        )
    try:
        if kind is FieldKind.ACOUSTIC:
            for key in ("sound_speed", "density"):
                if key not in doc:
                    raise ScenarioValidationError(f"{where}: missing key {key!r}")
            return Acoustic(
                parse_quantity(doc["sound_speed"], "speed", f"{where}.sound_speed")[0],
                parse_quantity(doc["density"], "density", f"{where}.density")[0],
            )
        if "potential" in doc:
            potential = parse_quantity(doc["potential"], "energy", f"{where}.potential")[0]
        else:
            potential = 0.0
        mass = parse_quantity(doc.get("mass", "1 m_e"), "mass", f"{where}.mass")[0]
        return Quantum(potential, mass)
    except ScenarioValidationError:
        raise
    except ConfigurationError as exc:
        raise ScenarioValidationError(f"{where}: {exc}") from exc


def _lead(doc, kind, where) -> Medium:
    _mapping(doc, where, optional=_MEDIUM_KEYS[kind])
    return _medium(doc, kind, where)


def _layers(entries, kind, where) -> tuple:
    if not isinstance(entries, list):
        raise ScenarioValidationError(f"{where}: expected a list")
    out = []
    for i, e in enumerate(entries):
        w = f"{where}[{i}]"
        if isinstance(e, dict) and "repeat" in e:
            _mapping(e, w, required=("repeat", "layers"))
            n = _integer(e["repeat"], f"{w}.repeat")
            if n < 1:
                raise ScenarioValidationError(f"{w}.repeat: must be >= 1")
            out.append(LayerGroup(n, _layers(e["layers"], kind, f"{w}.layers")))
            continue
        _mapping(e, w, required=("thickness",), optional=_MEDIUM_KEYS[kind])
        d = parse_quantity(e["thickness"], "length", f"{w}.thickness")[0]
        if d < 0:
            raise ScenarioValidationError(f"{w}.thickness: must be >= 0")
        medium_doc = {k: v for k, v in e.items() if k != "thickness"}
        out.append(Layer(_medium(medium_doc, kind, w), d))
    return tuple(out)


def _geometry(doc, kind, where):
    if not isinstance(doc, dict) or "type" not in doc:
        raise ScenarioValidationError(f"{where}: expected a mapping with a 'type'")
    try:
        if doc["type"] == "ftir":
            _mapping(doc, where, required=("type", "angle", "prism_index"), optional=("gap_index",))
            return FtirGeometry(
                parse_quantity(doc["angle"], "angle", f"{where}.angle")[0],
                _number(doc["prism_index"], f"{where}.prism_index"),
                _number(doc.get("gap_index", 1.0), f"{where}.gap_index"),
            )
        if doc["type"] == "waveguide":
            _mapping(doc, where, required=("type",), optional=("cutoff", "width"))
            if ("cutoff" in doc) == ("width" in doc):
                raise ScenarioValidationError(f"{where}: give exactly one of cutoff or width")
            if "width" in doc:
                return WaveguideGeometry.from_width(
                    parse_quantity(doc["width"], "length", f"{where}.width")[0]
                )
            wc = parse_quantity(doc["cutoff"], ("angular_frequency",), f"{where}.cutoff")[0]
            return WaveguideGeometry(wc)
    except ScenarioValidationError:
        raise
    except ConfigurationError as exc:
        raise ScenarioValidationError(f"{where}: {exc}") from exc
    raise ScenarioValidationError(f"{where}.type: unknown geometry {doc['type']!r}")


def config_from_dict(doc: dict) -> ScenarioConfig:
    _mapping(
        doc,
        "scenario",
        required=("name", "field", "grid", "left_lead", "analyses"),
        optional=("right_lead", "layers", "geometry", "pulse", "hartman", "probe",
                  "description", "provenance"),
    )
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise ScenarioValidationError("name: expected a non-empty string")
    try:
        kind = FieldKind(doc["field"])
    except ValueError:
        raise ScenarioValidationError(
            f"field: expected one of {[k.value for k in FieldKind]}, got {doc['field']!r}"
        ) from None
    drive_dim = ("energy",) if kind is FieldKind.QUANTUM else ("angular_frequency",)

    g = _mapping(doc["grid"], "grid", required=("start", "stop", "points"))
    start, quantity = parse_quantity(g["start"], drive_dim, "grid.start")
    stop, _ = parse_quantity(g["stop"], drive_dim, "grid.stop")
    grid = GridSpec(start, stop, _integer(g["points"], "grid.points"), quantity)

    analyses = doc["analyses"]
    if not isinstance(analyses, list) or not analyses:
        raise ScenarioValidationError("analyses: expected a non-empty list")
    for a in analyses:
        if a not in ANALYSES:
            raise ScenarioValidationError(f"analyses: unknown analysis {a!r}")

    left = _lead(doc["left_lead"], kind, "left_lead")
    right = _lead(doc["right_lead"], kind, "right_lead") if "right_lead" in doc else left
    layers = _layers(doc.get("layers", []), kind, "layers")
    geometry = _geometry(doc["geometry"], kind, "geometry") if "geometry" in doc else None

    pulse = None
    if "pulse" in doc:
        p = _mapping(doc["pulse"], "pulse", required=("carrier", "width", "samples", "span"))
        pulse = PulseSpec(
            parse_quantity(p["carrier"], "frequency", "pulse.carrier")[0],
            parse_quantity(p["width"], "time", "pulse.width")[0],
            _integer(p["samples"], "pulse.samples"),
            parse_quantity(p["span"], "time", "pulse.span")[0],
        )
    hartman = None
    if "hartman" in doc:
        h = _mapping(doc["hartman"], "hartman", required=("layer", "lengths"),
                     optional=("probe", "threshold"))
        if not isinstance(h["lengths"], list) or not h["lengths"]:
            raise ScenarioValidationError("hartman.lengths: expected a non-empty list")
        hartman = HartmanSpec(
            _integer(h["layer"], "hartman.layer"),
            tuple(parse_quantity(v, "length", f"hartman.lengths[{i}]")[0]
                  for i, v in enumerate(h["lengths"])),
            _integer(h["probe"], "hartman.probe") if "probe" in h else None,
            _number(h.get("threshold", 0.01), "hartman.threshold"),
        )
    probe = parse_quantity(doc["probe"], drive_dim, "probe")[0] if "probe" in doc else None

    for key in ("description", "provenance"):
        if key in doc and not isinstance(doc[key], str):
            raise ScenarioValidationError(f"{key}: expected a string")

    cfg = ScenarioConfig(
        name=name, field_kind=kind, left_lead=left, right_lead=right, grid=grid,
        analyses=tuple(analyses), layers=layers, geometry=geometry, pulse=pulse,
        hartman=hartman, probe=probe, description=doc.get("description", ""),
        provenance=doc.get("provenance", ""),
    )
    if "pulse" in cfg.analyses and cfg.pulse is None:
        raise ScenarioValidationError("analyses: 'pulse' requested without a pulse section")
    if "pulse" in cfg.analyses and kind is FieldKind.QUANTUM:
        raise ScenarioValidationError("analyses: pulses are defined for classical waves only")
    if "hartman" in cfg.analyses and cfg.hartman is None:
        raise ScenarioValidationError("analyses: 'hartman' requested without a hartman section")
    if cfg.hartman is not None and not 0 <= cfg.hartman.layer < len(cfg.flat_layers()):
        raise ScenarioValidationError("hartman.layer: index outside the layer list")
    try:
        cfg.stack()
    except ConfigurationError as exc:
        raise ScenarioValidationError(f"stack: {exc}") from exc
    return cfg


def load_scenario(text: str) -> ScenarioConfig:
    """Parse and validate a scenario document."""
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ScenarioValidationError(f"parse error at {where}: {exc.problem}") from exc
    except yaml.YAMLError as exc:
        raise ScenarioValidationError(f"parse error: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioValidationError("scenario document must be a mapping")
    return config_from_dict(doc)


# --- objects -> document -------------------------------------------------------

def _medium_doc(m: Medium) -> dict:
    if isinstance(m, Electromagnetic):
        return {"eps_r": float(np.real(m.eps_r)), "mu_r": float(np.real(m.mu_r))}
    if isinstance(m, Acoustic):
        return {"sound_speed": format_quantity(m.sound_speed, "speed"),
                "density": format_quantity(m.density, "density")}
    return {"potential": format_quantity(m.potential, "energy"),
            "mass": format_quantity(m.mass, "mass")}


def _layers_doc(entries) -> list:
    out = []
    for e in entries:
        if isinstance(e, LayerGroup):
            out.append({"repeat": e.repeat, "layers": _layers_doc(e.layers)})
        else:
            out.append({"thickness": format_quantity(e.thickness, "length"), **_medium_doc(e.medium)})
    return out


def config_to_dict(cfg: ScenarioConfig) -> dict:
    q = cfg.grid.quantity
    doc = {
        "name": cfg.name,
        "field": cfg.field_kind.value,
        "description": cfg.description,
        "provenance": cfg.provenance,
        "analyses": list(cfg.analyses),
        "grid": {"start": format_quantity(cfg.grid.start, q),
                 "stop": format_quantity(cfg.grid.stop, q),
                 "points": cfg.grid.points},
        "left_lead": _medium_doc(cfg.left_lead),
        "right_lead": _medium_doc(cfg.right_lead),
        "layers": _layers_doc(cfg.layers),
    }
    if cfg.probe is not None:
        doc["probe"] = format_quantity(cfg.probe, q)
    g = cfg.geometry
    if isinstance(g, FtirGeometry):
        doc["geometry"] = {"type": "ftir", "angle": format_quantity(g.incidence_angle, "angle"),
                           "prism_index": g.prism_index, "gap_index": g.gap_index}
    elif isinstance(g, WaveguideGeometry):
        doc["geometry"] = {"type": "waveguide",
                           "cutoff": format_quantity(g.cutoff_frequency, "angular_frequency")}
    if cfg.pulse is not None:
        p = cfg.pulse
        doc["pulse"] = {"carrier": format_quantity(p.carrier, "frequency"),
                        "width": format_quantity(p.width, "time"),
                        "samples": p.samples, "span": format_quantity(p.span, "time")}
    if cfg.hartman is not None:
        h = cfg.hartman
        doc["hartman"] = {"layer": h.layer,
                          "lengths": [format_quantity(v, "length") for v in h.lengths],
                          "threshold": h.threshold}
        if h.probe is not None:
            doc["hartman"]["probe"] = h.probe
    return doc


def dump_scenario(cfg: ScenarioConfig) -> str:
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False, allow_unicode=True)
