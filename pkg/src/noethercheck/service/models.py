"""Request/response models for the verification service; the CLI reuses
them as its wire format."""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class OracleOptions(BaseModel):
    enabled: bool = True
    samples: int = Field(default=100, ge=1, le=100000)
    min_q: int = Field(default=2**20 + 1, ge=2)
    seed_mode: Literal["deterministic", "entropy"] = "deterministic"


class VerifyRequest(BaseModel):
    script: str
    family: Optional[str] = None
    p: Optional[int] = None
    n: Optional[int] = None
    oracle: OracleOptions = Field(default_factory=OracleOptions)


class StepReportModel(BaseModel):
    step_id: str
    kind: str
    status: str
    detail: str = ""
    oracle_agree: Optional[int] = None
    oracle_trials: Optional[int] = None


class ScriptReportModel(BaseModel):
    script_id: str
    params: dict
    passed: bool
    steps: list[StepReportModel]
    notes: list[str] = Field(default_factory=list)


class VerifyResponse(BaseModel):
    passed: bool
    report: ScriptReportModel


class GroupRequest(BaseModel):
    family: str
    p: int = 2
    n: int


class GroupReport(BaseModel):
    family: str
    p: int
    n: int
    order: int
    exponent: int
    relations_ok: bool
    relations_detail: str
    order_histogram: dict[str, int]
    unique_involution: Optional[str] = None


class AllRequest(BaseModel):
    max_n: int = Field(default=5, ge=3, le=8)
    oracle: OracleOptions = Field(default_factory=OracleOptions)
    include_steps: bool = True


class SummaryRow(BaseModel):
    script_id: str
    params: dict
    status: Literal["pass", "fail", "skipped"]
    reason: str = ""
    steps: list[StepReportModel] = Field(default_factory=list)


class AllResponse(BaseModel):
    passed: bool
    rows: list[SummaryRow]


class SituationModel(BaseModel):
    family: str
    a_label: str
    script_id: str
