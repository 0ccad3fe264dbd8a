"""Per-case verification scripts, hypothesis gates and certificate reports."""

from .certificate import FAIL, GATED, NOTED, PASS, SCHEMA_VERSION, STATUSES, CaseRun, Certificate, Step
from .gates import (UFD_CYCLOTOMIC, gate_t1_1, gate_t1_2, gate_t1_5, gate_t1_7, gate_t2_2, gate_t2_2_relative,
                    gate_t2_3, gate_t2_4, gate_t2_5, gate_t2_6, gate_t2_7)
from .runner import Report, RunConfig, RunConfigError, coverage, run_all, run_case, scripts_for

__all__ = [
    "FAIL", "GATED", "NOTED", "PASS", "SCHEMA_VERSION", "STATUSES", "CaseRun", "Certificate", "Step",
    "UFD_CYCLOTOMIC", "gate_t1_1", "gate_t1_2", "gate_t1_5", "gate_t1_7", "gate_t2_2", "gate_t2_2_relative",
    "gate_t2_3", "gate_t2_4", "gate_t2_5", "gate_t2_6", "gate_t2_7",
    "Report", "RunConfig", "RunConfigError", "coverage", "run_all", "run_case", "scripts_for",
]
