#!/usr/bin/env python3
"""
Result Schema Definitions
Pydantic models for command results and verification reports
"""

import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

# =============================================================================
# PYDANTIC MODELS
# =============================================================================


class CommandResult(BaseModel):
    """Outcome of one CLI command"""
    command: str = Field(description="Subcommand name, e.g. 'expand' or 'ranks'")
    status: Literal["ok", "error"] = Field("ok", description="Whether the command completed")
    inputs: Dict[str, Any] = Field(default_factory=dict, description="Parsed flags and operands")
    result: Any = Field(None, description="Element text, boolean, rank table or suite report")
    caveats: List[str] = Field(
        default_factory=list,
        description="Flags qualifying the answer, e.g. 'faithfulness-unproven'"
    )
    message: Optional[str] = Field(None, description="Error message when status is 'error'")

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "caveats": self.caveats,
        }
        if self.status == "error":
            payload["status"] = self.status
            payload["message"] = self.message
        return json.dumps(payload, sort_keys=True, ensure_ascii=False)


class CheckResult(BaseModel):
    """A single named check inside a verification suite"""
    name: str = Field(description="What was checked, including its parameters")
    passed: bool = Field(description="Whether the computed value matched the expected one")
    detail: Optional[str] = Field(None, description="Counterexample or mismatch description")


class SuiteReport(BaseModel):
    """Per-check report of a verification suite"""
    suite: str = Field(description="Suite name")
    seed: int = Field(description="Seed driving the randomized trials")
    checks: List[CheckResult] = Field(default_factory=list)
    passed: bool = Field(True, description="True iff every check passed")

    def add(self, name: str, passed: bool, detail: Optional[str] = None) -> None:
        self.checks.append(CheckResult(name=name, passed=passed, detail=detail))
        self.passed = self.passed and passed

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


class RankTable(BaseModel):
    """Ranks computed by `ranks`, keyed by the varying parameter"""
    what: Literal["lie", "gamma", "primitives", "lcs", "basis", "equalizer", "kernel"] = Field(
        description="Which module the ranks are of"
    )
    ring: str = Field(description="Coefficient ring in CLI syntax")
    parameters: Dict[str, int] = Field(default_factory=dict, description="Fixed parameters (n, k, t, dim, q)")
    ranks: Dict[str, int] = Field(default_factory=dict, description="Rank per degree or per n")
    invariant_factors: Optional[List[int]] = Field(
        None,
        description="Nonzero invariant factors, when the ring is the integers"
    )


# =============================================================================
# HELPER FUNCTIONS
# =============================================================================

MODELS = {
    "command_result": CommandResult,
    "check_result": CheckResult,
    "suite_report": SuiteReport,
    "rank_table": RankTable,
}


def validate_result(schema_name: str, data: Dict[str, Any]) -> BaseModel:
    """Validate data against a result model"""
    if schema_name not in MODELS:
        raise ValueError(f"Unknown model: {schema_name}. Available: {list(MODELS.keys())}")
    return MODELS[schema_name](**data)

