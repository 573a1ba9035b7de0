"""
Report models for analyses and scans.

Pydantic models keep the JSON layout stable and enforce the report
invariants at construction time.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config.constants import FidelityClass
from ..config.settings import OptimizerSettings

# Slack allowed between beta and tau before a report is rejected
REPORT_TOL = 1e-6


class FamilyConditions(BaseModel):
    """Sufficient conditions evaluated for D_{lambda,alpha} family states."""
    lam: float = Field(alias="lambda")
    alpha: float
    bell: bool
    class1: bool
    class23: bool
    in_paper_region: bool

    model_config = ConfigDict(populate_by_name=True)


class ArgmaxSettings(BaseModel):
    """Maximizing settings of the tau search."""
    assignment_1: List[int]
    assignment_2: List[int]
    assignment_class: str
    theta_1: float
    vartheta_1: float
    theta_2: float
    vartheta_2: float
    bob_1: List[float]
    bob_2: List[float]


class AnalysisReport(BaseModel):
    """Per-state analysis record."""
    state: str
    beta: float
    tau_raw: float
    tau_lower_bound: float
    f_st: float
    fidelity_class: FidelityClass
    threshold_bound: float
    threshold_implies_violation: bool
    bell_violating: bool
    tele_violating: bool
    conditions: Optional[FamilyConditions] = None
    argmax: ArgmaxSettings
    per_class_max: Dict[str, float] = Field(default_factory=dict)
    optimizer_converged: bool = True
    version: str
    seed: int
    optimizer: OptimizerSettings

    @model_validator(mode='after')
    def validate_beta_ge_tau(self):
        if self.beta < self.tau_raw - REPORT_TOL:
            raise ValueError(
                f"beta {self.beta!r} is below tau_raw {self.tau_raw!r}; the search overshot"
            )
        return self

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.model_validate_json(text)


class ScanRecord(BaseModel):
    """One (lambda, alpha) grid point of a region scan."""
    lam: float = Field(alias="lambda")
    alpha: float
    beta: float
    tau_raw: float
    f_st: float
    bell_violating: bool
    tele_violating: bool
    nonclassical_fidelity: bool
    in_paper_region: bool

    model_config = ConfigDict(populate_by_name=True)

    @model_validator(mode='after')
    def validate_region(self):
        if self.in_paper_region and not (self.beta > 2.0 and self.tau_raw <= 2.0 + REPORT_TOL):
            raise ValueError(
                f"({self.lam}, {self.alpha}) is flagged in region but beta={self.beta!r}, "
                f"tau_raw={self.tau_raw!r}"
            )
        return self

    def as_row(self) -> Dict[str, object]:
        return self.model_dump(by_alias=True)
