"""Report datatypes for the proof-replay runner."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class StepKind:
    DEFINE_VARS = "DefineVars"
    CLAIM_ACTION = "ClaimAction"
    MONOMIAL_FIELD_EQUALITY = "MonomialFieldEquality"
    EXPLICIT_INVERSE_FIELD_EQUALITY = "ExplicitInverseFieldEquality"
    FIXEDNESS_CLAIM = "FixednessClaim"
    THEOREM_REDUCTION = "TheoremReduction"
    RELABEL = "Relabel"
    DELEGATE = "Delegate"


class StepStatus:
    PASS = "pass"
    FAIL = "fail"
    DELEGATED = "delegated"
    HYPOTHESIS_ONLY = "hypothesis-only"


@dataclass
class StepReport:
    step_id: str
    kind: str
    status: str
    detail: str = ""
    oracle_agree: int | None = None
    oracle_trials: int | None = None

    @property
    def ok(self) -> bool:
        return self.status != StepStatus.FAIL

    def as_dict(self) -> dict[str, Any]:
        return {
            "step_id": self.step_id,
            "kind": self.kind,
            "status": self.status,
            "detail": self.detail,
            "oracle_agree": self.oracle_agree,
            "oracle_trials": self.oracle_trials,
        }

    def text_line(self) -> str:
        oracle = (
            f"  [oracle {self.oracle_agree}/{self.oracle_trials}]"
            if self.oracle_trials
            else ""
        )
        return f"{self.status:<15} {self.kind:<30} {self.step_id}{oracle}"


@dataclass
class ScriptReport:
    script_id: str
    params: dict[str, Any]
    steps: list[StepReport] = field(default_factory=list)
    snapshots: dict[str, dict[str, dict[str, str]]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    delegations: list[tuple[str, dict, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if any(s.status == StepStatus.FAIL for s in self.steps):
            return False
        return all(ok for _, _, ok in self.delegations)

    def as_dict(self) -> dict[str, Any]:
        return {
            "script_id": self.script_id,
            "params": self.params,
            "passed": self.passed,
            "steps": [s.as_dict() for s in self.steps],
        }

    def text_lines(self) -> list[str]:
        head = f"== {self.script_id} {self.params} =="
        lines = [head] + [s.text_line() for s in self.steps]
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return lines


@dataclass(frozen=True)
class RunOptions:
    oracle: bool = True
    samples: int = 100
    min_q: int = 2**20 + 1
    deterministic: bool = True
    n_cap: int = 10
