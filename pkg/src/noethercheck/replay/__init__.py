from .model import RunOptions, ScriptReport, StepKind, StepReport, StepStatus
from .registry import normalize_params, run_script, script_ids
from .section4 import Situation, check_n_independence, enumerate_situations

__all__ = [
    "RunOptions", "ScriptReport", "StepKind", "StepReport", "StepStatus",
    "normalize_params", "run_script", "script_ids",
    "Situation", "check_n_independence", "enumerate_situations",
]
