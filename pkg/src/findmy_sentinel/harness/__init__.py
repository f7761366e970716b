"""Scenario harness: canonical scenarios, engine comparison and reporting."""

from findmy_sentinel.harness.canonical import canonical_names, get_canonical
from findmy_sentinel.harness.expectations import check_expectations, load_expectations
from findmy_sentinel.harness.report import emit_report
from findmy_sentinel.harness.runner import ComparisonRow, execute_scenario, run_scenario
from findmy_sentinel.harness.scenario import Scenario, load_scenario, parse_scenario
from findmy_sentinel.harness.sweep import ScanMode, scan_parameter_sweep

__all__ = [
    "ComparisonRow",
    "ScanMode",
    "Scenario",
    "canonical_names",
    "check_expectations",
    "emit_report",
    "execute_scenario",
    "get_canonical",
    "load_expectations",
    "load_scenario",
    "parse_scenario",
    "run_scenario",
    "scan_parameter_sweep",
]
