"""Scenario files, the builtin library and report emission."""

from .config import ScenarioConfig, ScenarioValidationError, dump_scenario, load_scenario
from .library import builtin, builtin_names, load_path
from .run import ScenarioError, ScenarioReport, run_scenario
from .table1 import render_table1, table1_report

__all__ = [
    "ScenarioConfig", "ScenarioValidationError", "dump_scenario", "load_scenario",
    "builtin", "builtin_names", "load_path", "ScenarioError", "ScenarioReport",
    "run_scenario", "render_table1", "table1_report",
]
