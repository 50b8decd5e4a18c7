"""
Harness package.
Scenario files, seeded instance generation, construction runs, auditing and reports.
"""

from harness.auditor import EnvelopeAuditor
from harness.generator import Dims, InstanceGenerator, TrialConfig, generate_instance, sample_dims, trial_rng
from harness.report import DiscrepancyRow, Report, TrialRecord, load_report, render, save_report
from harness.runner import ConstructionRunner, run_construction
from harness.scenario import KINDS, Scenario, load_scenario, parse_scenario, save_scenario

__all__ = [
    "ConstructionRunner",
    "Dims",
    "DiscrepancyRow",
    "EnvelopeAuditor",
    "InstanceGenerator",
    "KINDS",
    "Report",
    "Scenario",
    "TrialConfig",
    "TrialRecord",
    "generate_instance",
    "load_report",
    "load_scenario",
    "parse_scenario",
    "render",
    "run_construction",
    "sample_dims",
    "save_report",
    "save_scenario",
    "trial_rng",
]
